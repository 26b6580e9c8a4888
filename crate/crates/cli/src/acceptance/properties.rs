//! Criterion 6: seeded randomized and exhaustive invariants.

use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;

use stabmod_core::boundary::{opposite_pair_check, BoundaryModule, HalfSpace, Side};
use stabmod_core::metric::{MetricGroup, SUBGROUP_BUDGET};
use stabmod_core::{contains, zoo, FreeVector, LaurentPoly, Matrix, QuasiSymplectic1D, Ring, SubmodulePresentation, SymplecticSpace};

use super::Checker;

const SEED: u64 = 0x5eed_0006;
const SAMPLES: usize = 1000;

fn random_poly(rng: &mut ChaCha8Rng, ring: Ring, max_exp: i32, max_terms: usize) -> LaurentPoly {
    let mut f = ring.zero();
    for _ in 0..rng.gen_range(0..=max_terms) {
        let e: Vec<i32> = (0..ring.nvars).map(|_| rng.gen_range(-max_exp..=max_exp)).collect();
        f = f + ring.mono(&e, rng.gen_range(0..ring.n as i64));
    }
    f
}

fn random_vector(rng: &mut ChaCha8Rng, ring: Ring, rank: usize, max_exp: i32, max_terms: usize) -> FreeVector {
    FreeVector::new(ring, (0..rank).map(|_| random_poly(rng, ring, max_exp, max_terms)).collect())
}

pub fn all(c: &mut Checker) {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    anti_hermitian(c, &mut rng);
    double_complement(c, &mut rng);
    let modules = zoo_modules(c);
    refinement(c, &modules);
    extensions(c, &modules);
    witt(c, &mut rng);
    v_well_defined(c, &mut rng);
    crt(c);
    opposite_sides(c);
}

fn anti_hermitian(c: &mut Checker, rng: &mut ChaCha8Rng) {
    let mut failures = 0;
    for _ in 0..SAMPLES {
        let ring = Ring::new(rng.gen_range(1..=3), [2, 3, 4, 6, 9][rng.gen_range(0..5)]).expect("valid ring");
        let m = rng.gen_range(1..=2);
        let space = SymplecticSpace::new(ring, m).expect("valid space");
        let p = random_vector(rng, ring, 2 * m, 2, 3);
        let q = random_vector(rng, ring, 2 * m, 2, 3);
        let ok = match (space.omega(&p, &q), space.omega(&q, &p), space.omega(&p, &p)) {
            (Ok(pq), Ok(qp), Ok(pp)) => pq == -qp.involution() && pp.constant_term() == 0,
            _ => false,
        };
        failures += usize::from(!ok);
    }
    c.check("form anti-hermitian", failures == 0, format!("{failures}/{SAMPLES} failures"));
}

fn contained(outer: &SubmodulePresentation, inner: &SubmodulePresentation) -> bool {
    inner.generators().iter().all(|g| contains(outer, g).unwrap_or(false))
}

fn double_complement(c: &mut Checker, rng: &mut ChaCha8Rng) {
    for (label, nvars, moduli, rank, max_exp) in [("d = 1", 1, &[2u64, 3, 4, 9][..], 4, 2), ("d = 2 prime", 2, &[2, 3][..], 2, 1)] {
        let mut failures = Vec::new();
        for i in 0..SAMPLES {
            let ring = Ring::new(nvars, moduli[rng.gen_range(0..moduli.len())]).expect("valid ring");
            let space = SymplecticSpace::new(ring, rank / 2).expect("valid space");
            let gens = (0..rng.gen_range(1..=2)).map(|_| random_vector(rng, ring, rank, max_exp, 3)).collect();
            let m = SubmodulePresentation::new(ring, rank, gens).expect("consistent rank");
            let ok = (|| -> stabmod_core::Result<bool> {
                let p1 = space.orthogonal_complement(&m)?;
                let p2 = space.orthogonal_complement(&p1)?;
                let p3 = space.orthogonal_complement(&p2)?;
                Ok(contained(&p2, &m) && contained(&p3, &p1) && contained(&p1, &p3))
            })()
            .unwrap_or(false);
            if !ok {
                failures.push(i);
            }
        }
        c.check(format!("double complement laws, {label}"), failures.is_empty(), format!("failing samples {failures:?}"));
    }
}

fn zoo_modules(c: &mut Checker) -> Vec<(String, QuasiSymplectic1D)> {
    let mut out = Vec::new();
    for name in ["trivial", "toric", "toric3", "wen", "split"] {
        let Some(code) = c.attempt("zoo", zoo::by_name(name).expect("zoo name")) else { continue };
        for v in [[0, 1], [1, 0], [1, 1]] {
            let b = HalfSpace::new(&v).and_then(|hs| BoundaryModule::compute(&code, &hs, Side::Upper, Default::default()));
            if let Some(qs) = c.attempt("boundary", b.and_then(|b| b.quasi_symplectic())) {
                out.push((format!("{name} {v:?}"), qs));
            }
        }
    }
    let split = zoo::split_example()
        .and_then(|code| BoundaryModule::compute(&code, &HalfSpace::standard(2), Side::Upper, Default::default()))
        .and_then(|b| b.primary_module());
    if let Some(qs) = c.attempt("split primary", split) {
        out.push(("split primary".into(), qs));
    }
    out
}

fn refinement(c: &mut Checker, modules: &[(String, QuasiSymplectic1D)]) {
    let mut pairs = 0usize;
    let mut failures = Vec::new();
    for (name, qs) in modules {
        let Some(e) = c.attempt("E", qs.e_module()) else { continue };
        let n = qs.ring().n;
        let orders = e.invariant_factors();
        let elems = e.elements();
        let combine = |a: &[u64], b: &[u64], s: u64| -> Vec<u64> {
            a.iter().zip(b).zip(&orders).map(|((x, y), o)| (x + s * y) % o).collect()
        };
        for a in &elems {
            let Ok(qa) = e.q(a) else { failures.push(name.clone()); continue };
            for s in 0..n {
                let sa = combine(&vec![0; a.len()], a, s);
                if e.q(&sa).ok() != Some(s * s % n * qa % n) {
                    failures.push(format!("{name}: q({s}·{a:?})"));
                }
            }
            for b in &elems {
                pairs += 1;
                let (Ok(qab), Ok(qb), Ok(bab)) = (e.q(&combine(a, b, 1)), e.q(b), e.b(a, b)) else {
                    failures.push(name.clone());
                    continue;
                };
                if (qab + 2 * n - qa - qb) % n != bab {
                    failures.push(format!("{name}: b({a:?}, {b:?})"));
                }
            }
        }
    }
    c.check("q refines b and q(ca) = c²q(a)", failures.is_empty(), format!("{pairs} pairs, failing {failures:?}"));
}

fn extensions(c: &mut Checker, modules: &[(String, QuasiSymplectic1D)]) {
    let mut tested = 0;
    let mut failures = Vec::new();
    for (name, qs) in modules {
        let Some(e) = c.attempt("E", qs.e_module()) else { continue };
        let Some(g) = c.attempt("metric group", e.metric_group()) else { continue };
        let (iso, partial) = g.isotropic_subgroups(SUBGROUP_BUDGET);
        if partial {
            failures.push(format!("{name}: enumeration incomplete"));
        }
        for t in iso.iter().filter(|t| g.is_stable(t, e.action())) {
            tested += 1;
            let order = e.extend_by_isotropic(t).and_then(|p| p.e_module()).map(|x| x.order());
            if order.map(|o| o as usize * t.order()) != Ok(g.perp(t).order()) {
                failures.push(format!("{name}: {:?}", t.generators));
            }
        }
    }
    c.check("|E of P^T| = |T^⊥|/|T|", failures.is_empty() && tested > 0, format!("{tested} subgroups, failing {failures:?}"));
}

fn random_form(rng: &mut ChaCha8Rng, n: u64) -> Option<QuasiSymplectic1D> {
    let ring = Ring::new(1, n).ok()?;
    if rng.gen_bool(0.4) {
        // Rank one: c(x - x̄) with E = R/(c(x - x̄)).
        let c = rng.gen_range(1..n as i64);
        let f = ring.mono(&[1], c) - ring.mono(&[-1], c);
        let qs = QuasiSymplectic1D::new(Matrix::from_rows(ring, vec![vec![f]]).ok()?).ok()?;
        return qs.validate().ok()?.is_valid().then_some(qs);
    }
    let mut poly = |max_deg: i32| {
        (0..=max_deg).fold(ring.zero(), |f, e| f + ring.mono(&[e], rng.gen_range(0..n as i64)))
    };
    let a = poly(if n == 9 { 0 } else { 1 }) + ring.one();
    let f = poly(1);
    let g = poly(1);
    let mat = Matrix::from_rows(ring, vec![vec![a, f], vec![ring.zero(), g]]).ok()?;
    let j = SymplecticSpace::new(ring, 1).ok()?.form_matrix();
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

fn witt(c: &mut Checker, rng: &mut ChaCha8Rng) {
    for n in [4u64, 9] {
        let mut done = 0;
        let mut seen = [0usize; 2];
        let mut failures = 0;
        let mut draws = 0;
        while done < 50 && draws < 10_000 {
            draws += 1;
            let Some(qs) = random_form(rng, n) else { continue };
            let agree = (|| -> stabmod_core::Result<Option<bool>> {
                let before = qs.is_metabolic()?;
                let red = qs.witt_reduce()?;
                let after = red.reduced.is_metabolic()?;
                let lowered = red.over_prime_field.is_metabolic()?;
                let same = before.metabolic == after.metabolic && after.metabolic == lowered.metabolic;
                let exhaustive = before.exhaustive && after.exhaustive && lowered.exhaustive;
                Ok((same && exhaustive).then_some(before.metabolic))
            })();
            match agree {
                Ok(Some(m)) => seen[usize::from(m)] += 1,
                _ => failures += 1,
            }
            done += 1;
        }
        c.check(
            format!("Witt reduction preserves metabolicity over Z_{n}"),
            done == 50 && failures == 0 && seen.iter().all(|&s| s > 0),
            format!("{done} fixtures, metabolic/not {:?}, failures {failures}", [seen[1], seen[0]]),
        );
    }
}

fn v_well_defined(c: &mut Checker, rng: &mut ChaCha8Rng) {
    for name in ["toric", "toric3"] {
        let mut run = || -> stabmod_core::Result<usize> {
            let code = zoo::by_name(name).expect("zoo name")?;
            let b = BoundaryModule::compute(&code, &HalfSpace::standard(2), Side::Upper, Default::default())?;
            let qs = b.quasi_symplectic()?;
            let e = qs.e_module()?;
            let q = code.charge_module()?;
            let ring = b.ring();
            let elems = e.elements();
            let mut bad = 0;
            for trial in 0..100 {
                let a = &elems[trial % elems.len()];
                let base = e.representative(a);
                let shift = random_vector(rng, ring, b.rank(), 3, 2);
                let moved = base.add(&qs.gram().apply(&shift));
                let same_e = e.class_of(&moved)? == *a;
                let same_q = q.quotient.class_of(&b.v_functional(&base)?)? == q.quotient.class_of(&b.v_functional(&moved)?)?;
                bad += usize::from(!(same_e && same_q));
            }
            Ok(bad)
        };
        match run() {
            Ok(bad) => c.check(format!("V well defined on {name}"), bad == 0, format!("{bad}/100 perturbations disagree")),
            Err(e) => c.check(format!("V well defined on {name}"), false, e.to_string()),
        }
    }
}

fn crt(c: &mut Checker) {
    let run = || -> stabmod_core::Result<(bool, String)> {
        let code = zoo::toric(6)?;
        let parts = code.crt_split();
        let whole = code.charge_module()?;
        let orders: Vec<Option<u128>> = parts.iter().map(|p| p.charge_module().map(|q| q.order())).collect::<stabmod_core::Result<_>>()?;
        let charges_ok = whole.order().is_some() && whole.order() == orders.iter().copied().product::<Option<u128>>();
        let mut tori_ok = true;
        for sides in [[2, 2], [3, 3], [2, 3]] {
            let prod: u128 = parts.iter().map(|p| p.torus(&sides).map(|t| t.stabilized_dimension)).product::<stabmod_core::Result<u128>>()?;
            tori_ok &= code.torus(&sides)?.stabilized_dimension == prod;
        }
        let group = |code: &stabmod_core::StabilizerCode| -> stabmod_core::Result<MetricGroup> {
            BoundaryModule::compute(code, &HalfSpace::standard(2), Side::Upper, Default::default())?.metric_group()
        };
        let whole_e = group(&code)?;
        let product = MetricGroup::crt_product(&[group(&parts[0])?, group(&parts[1])?])?;
        let e_ok = whole_e.iso_check(&product)?.is_some();
        Ok((charges_ok && tori_ok && e_ok, format!("charges {charges_ok}, tori {tori_ok}, E {e_ok}")))
    };
    match run() {
        Ok((ok, detail)) => c.check("Z_6 results factor through Z_2 and Z_3", ok, detail),
        Err(e) => c.check("Z_6 results factor through Z_2 and Z_3", false, e.to_string()),
    }
}

fn opposite_sides(c: &mut Checker) {
    let mut failures = Vec::new();
    for name in ["trivial", "toric", "toric3", "toric4", "wen", "split"] {
        for v in [[0, 1], [1, 1]] {
            let r = zoo::by_name(name)
                .expect("zoo name")
                .and_then(|code| opposite_pair_check(&code, &HalfSpace::new(&v)?, Default::default()));
            match r {
                Ok(cert) if cert.e_metabolic == Some(true) && cert.holds() => {}
                Ok(cert) => failures.push(format!("{name} {v:?}: {cert:?}")),
                Err(e) => failures.push(format!("{name} {v:?}: {e}")),
            }
        }
    }
    c.check("E of both sides together is metabolic", failures.is_empty(), format!("failing {failures:?}"));
}
