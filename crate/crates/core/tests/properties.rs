//! Randomized and exhaustive invariants of the module algebra. Seeds are fixed through proptest's
//! deterministic runner so failures reproduce.

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;

use stabmod_core::boundary::{opposite_pair_check, BoundaryModule, HalfSpace, Side};
use stabmod_core::metric::MetricGroup;
use stabmod_core::{contains, zoo, FreeVector, LaurentPoly, Matrix, QuasiSymplectic1D, Ring, SubmodulePresentation, SymplecticSpace};

fn runner(cases: u32) -> TestRunner {
    let seed = *b"stabmod property suite seed 0001";
    TestRunner::new_with_rng(Config { cases, ..Config::default() }, TestRng::from_seed(RngAlgorithm::ChaCha, &seed))
}

fn poly_strategy(ring: Ring, max_exp: i32, max_terms: usize) -> impl Strategy<Value = LaurentPoly> {
    let d = ring.nvars;
    let n = ring.n as i64;
    prop::collection::vec((prop::collection::vec(-max_exp..=max_exp, d), 0..n), 0..=max_terms).prop_map(move |terms| {
        let mut f = ring.zero();
        for (e, c) in terms {
            f = f + ring.mono(&e, c);
        }
        f
    })
}

fn vector_strategy(ring: Ring, rank: usize, max_exp: i32, max_terms: usize) -> impl Strategy<Value = FreeVector> {
    prop::collection::vec(poly_strategy(ring, max_exp, max_terms), rank).prop_map(move |e| FreeVector::new(ring, e))
}

fn rings() -> impl Strategy<Value = Ring> {
    (1usize..=3, prop::sample::select(vec![2u64, 3, 4, 6, 9])).prop_map(|(d, n)| Ring::new(d, n).unwrap())
}

#[test]
fn form_is_anti_hermitian() {
    let strat = (rings(), 1usize..=2).prop_flat_map(|(ring, m)| {
        (Just(ring), Just(m), vector_strategy(ring, 2 * m, 2, 3), vector_strategy(ring, 2 * m, 2, 3))
    });
    runner(1000)
        .run(&strat, |(ring, m, p, q)| {
            let space = SymplecticSpace::new(ring, m).unwrap();
            let pq = space.omega(&p, &q).unwrap();
            let qp = space.omega(&q, &p).unwrap();
            prop_assert_eq!(pq, -qp.involution());
            prop_assert_eq!(space.omega(&p, &p).unwrap().constant_term(), 0);
            Ok(())
        })
        .unwrap();
}

fn contained(outer: &SubmodulePresentation, inner: &SubmodulePresentation) -> bool {
    inner.generators().iter().all(|g| contains(outer, g).unwrap())
}

fn check_double_perp(ring: Ring, gens: Vec<FreeVector>) -> Result<(), TestCaseError> {
    let space = SymplecticSpace::new(ring, gens[0].rank() / 2).unwrap();
    let m = SubmodulePresentation::new(ring, space.rank(), gens).unwrap();
    let perp = space.orthogonal_complement(&m).unwrap();
    let perp2 = space.orthogonal_complement(&perp).unwrap();
    let perp3 = space.orthogonal_complement(&perp2).unwrap();
    prop_assert!(contained(&perp2, &m), "M ⊄ M^⊥⊥");
    prop_assert!(contained(&perp3, &perp) && contained(&perp, &perp3), "M^⊥⊥⊥ ≠ M^⊥");
    Ok(())
}

#[test]
fn double_complement_univariate() {
    let strat = prop::sample::select(vec![2u64, 3, 4, 9]).prop_flat_map(|n| {
        let ring = Ring::new(1, n).unwrap();
        (Just(ring), prop::collection::vec(vector_strategy(ring, 4, 2, 3), 1..=2))
    });
    runner(1000).run(&strat, |(ring, gens)| check_double_perp(ring, gens)).unwrap();
}

#[test]
fn double_complement_bivariate_prime() {
    let strat = prop::sample::select(vec![2u64, 3]).prop_flat_map(|n| {
        let ring = Ring::new(2, n).unwrap();
        (Just(ring), prop::collection::vec(vector_strategy(ring, 2, 1, 3), 1..=2))
    });
    runner(1000).run(&strat, |(ring, gens)| check_double_perp(ring, gens)).unwrap();
}

/// Boundary modules of the two-dimensional zoo along the three standard normals.
fn zoo_boundaries() -> Vec<(String, BoundaryModule)> {
    let mut out = Vec::new();
    for name in ["toric", "toric3", "wen", "split", "trivial"] {
        let code = zoo::by_name(name).unwrap().unwrap();
        for v in [[0, 1], [1, 0], [1, 1]] {
            let b = BoundaryModule::compute(&code, &HalfSpace::new(&v).unwrap(), Side::Upper, Default::default()).unwrap();
            out.push((format!("{name} {v:?}"), b));
        }
    }
    out
}

fn zoo_e_modules() -> Vec<(String, QuasiSymplectic1D)> {
    let mut out: Vec<(String, QuasiSymplectic1D)> =
        zoo_boundaries().into_iter().map(|(name, b)| (name, b.quasi_symplectic().unwrap())).collect();
    let split = BoundaryModule::compute(&zoo::split_example().unwrap(), &HalfSpace::standard(2), Side::Upper, Default::default()).unwrap();
    out.push(("split primary".into(), split.primary_module().unwrap()));
    out
}

#[test]
fn quadratic_refinement_identities() {
    for (name, qs) in zoo_e_modules() {
        let e = qs.e_module().unwrap();
        let n = qs.ring().n;
        let elems = e.elements();
        let add = |a: &[u64], b: &[u64]| -> Vec<u64> {
            a.iter().zip(b).zip(e.invariant_factors()).map(|((x, y), o)| (x + y) % o).collect()
        };
        for a in &elems {
            let qa = e.q(a).unwrap();
            for c in 0..n {
                let ca: Vec<u64> = a.iter().zip(e.invariant_factors()).map(|(x, o)| (c * x) % o).collect();
                assert_eq!(e.q(&ca).unwrap(), (c * c % n) * qa % n, "{name}: q(ca) for {a:?}, c = {c}");
            }
            for b in &elems {
                let lhs = (e.q(&add(a, b)).unwrap() + 2 * n - qa - e.q(b).unwrap()) % n;
                assert_eq!(lhs, e.b(a, b).unwrap(), "{name}: polarization at {a:?}, {b:?}");
            }
        }
    }
}

#[test]
fn extension_by_isotropic_subgroups() {
    for (name, qs) in zoo_e_modules() {
        let e = qs.e_module().unwrap();
        let g = e.metric_group().unwrap();
        let (iso, partial) = g.isotropic_subgroups(1 << 16);
        assert!(!partial);
        for t in iso.iter().filter(|t| g.is_stable(t, e.action())) {
            let ext = e.extend_by_isotropic(t).unwrap();
            let order = ext.e_module().unwrap().order();
            assert_eq!(order as usize * t.order(), g.perp(t).order(), "{name}: T = {:?}", t.generators);
        }
    }
}

/// Random nondegenerate forms `A^† J A` over `Z_{p^r}[x^±]`, optionally doubled with their opposite.
fn random_form(rng: &mut ChaCha8Rng, n: u64) -> Option<QuasiSymplectic1D> {
    let ring = Ring::new(1, n).unwrap();
    if rng.gen_bool(0.4) {
        // Rank one: c(x - x̄) with E = R/(c(x - x̄)).
        let c = rng.gen_range(1..n as i64);
        let f = ring.mono(&[1], c) - ring.mono(&[-1], c);
        let qs = QuasiSymplectic1D::new(Matrix::from_rows(ring, vec![vec![f]]).unwrap()).ok()?;
        return qs.validate().ok()?.is_valid().then_some(qs);
    }
    let poly = |max_deg: i32, rng: &mut ChaCha8Rng| {
        let mut f = ring.zero();
        for e in 0..=max_deg {
            f = f + ring.mono(&[e], rng.gen_range(0..n as i64));
        }
        f
    };
    let diag_deg = if n == 9 { 0 } else { 1 };
    let a = poly(diag_deg, rng) + ring.one();
    let g = poly(1, rng);
    let f = poly(1, rng);
    let mat = Matrix::from_rows(ring, vec![vec![a, f], vec![ring.zero(), g]]).unwrap();
    let j = SymplecticSpace::new(ring, 1).unwrap().form_matrix();
    let gram = mat.adjoint().mul(&j).mul(&mat);
    if gram.is_zero() {
        return None;
    }
    let qs = QuasiSymplectic1D::new(gram).ok()?;
    if !qs.validate().ok()?.is_valid() {
        return None;
    }
    let order = qs.e_module().ok()?.order();
    if order > 81 {
        return None;
    }
    Some(if order <= 9 && rng.gen_bool(0.5) { qs.direct_sum(&qs.opposite()) } else { qs })
}

#[test]
fn witt_reduction_preserves_metabolicity() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5717);
    for n in [4u64, 9] {
        let mut done = 0;
        let mut metabolic_seen = [0usize; 2];
        while done < 50 {
            let Some(qs) = random_form(&mut rng, n) else { continue };
            let before = qs.is_metabolic().unwrap();
            let reduction = qs.witt_reduce().unwrap();
            let after = reduction.reduced.is_metabolic().unwrap();
            let lowered = reduction.over_prime_field.is_metabolic().unwrap();
            assert!(before.exhaustive && after.exhaustive && lowered.exhaustive);
            assert_eq!(before.metabolic, after.metabolic, "Z_{n}: {:?}", qs.gram());
            assert_eq!(before.metabolic, lowered.metabolic, "Z_{n}: {:?}", qs.gram());
            metabolic_seen[usize::from(before.metabolic)] += 1;
            done += 1;
        }
        assert!(metabolic_seen.iter().all(|&c| c > 0), "Z_{n}: fixtures are one-sided {metabolic_seen:?}");
    }
}

#[test]
fn boundary_to_bulk_map_is_well_defined() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xb0b);
    for name in ["toric", "toric3"] {
        let code = zoo::by_name(name).unwrap().unwrap();
        let b = BoundaryModule::compute(&code, &HalfSpace::standard(2), Side::Upper, Default::default()).unwrap();
        let qs = b.quasi_symplectic().unwrap();
        let e = qs.e_module().unwrap();
        let q = code.charge_module().unwrap();
        let ring = b.ring();
        let n = ring.n as i64;
        let elems = e.elements();
        for trial in 0..100 {
            let a = &elems[trial % elems.len()];
            let base = e.representative(a);
            let c = FreeVector::new(
                ring,
                (0..b.rank()).map(|_| ring.mono(&[rng.gen_range(-3..=3)], rng.gen_range(0..n))).collect(),
            );
            let shifted = base.add(&qs.gram().apply(&c));
            assert_eq!(e.class_of(&shifted).unwrap(), *a);
            let v0 = q.quotient.class_of(&b.v_functional(&base).unwrap()).unwrap();
            let v1 = q.quotient.class_of(&b.v_functional(&shifted).unwrap()).unwrap();
            assert_eq!(v0, v1, "{name}: class {a:?}");
        }
    }
}

fn boundary_group(name: &str) -> MetricGroup {
    let code = zoo::by_name(name).unwrap().unwrap();
    BoundaryModule::compute(&code, &HalfSpace::standard(2), Side::Upper, Default::default()).unwrap().metric_group().unwrap()
}

#[test]
fn composite_modulus_factors() {
    let code = zoo::toric(6).unwrap();
    let parts = code.crt_split();
    assert_eq!(parts.iter().map(|c| c.ring().n).collect::<Vec<_>>(), vec![2, 3]);
    let whole = code.charge_module().unwrap();
    let split: Vec<_> = parts.iter().map(|c| c.charge_module().unwrap()).collect();
    assert_eq!(whole.order(), Some(split.iter().map(|q| q.order().unwrap()).product()));
    for sides in [[2, 2], [3, 3], [2, 3]] {
        let t = code.torus(&sides).unwrap();
        let prod: u128 = parts.iter().map(|c| c.torus(&sides).unwrap().stabilized_dimension).product();
        assert_eq!(t.stabilized_dimension, prod, "{sides:?}");
    }
    let whole_e = boundary_group("toric6");
    let product = MetricGroup::crt_product(&[boundary_group("toric"), boundary_group("toric3")]).unwrap();
    assert_eq!(whole_e.order(), product.order());
    assert!(whole_e.iso_check(&product).unwrap().is_some());
}

#[test]
fn opposite_boundaries_are_metabolic_together() {
    for name in ["trivial", "toric", "toric3", "toric4", "wen", "split"] {
        let code = zoo::by_name(name).unwrap().unwrap();
        for v in [[0, 1], [1, 1]] {
            let c = opposite_pair_check(&code, &HalfSpace::new(&v).unwrap(), Default::default()).unwrap();
            assert_eq!(c.e_metabolic, Some(true), "{name} {v:?}: {c:?}");
            assert!(c.holds());
        }
    }
}
