use stabmod_core::boundary::{
    boundary_of_coarse, lift_check, mobility, qca_boundary_algebra, qca_vs_boundary_check, upper_pairing, BoundaryModule,
    HalfSpace, MobilityStatus, QcaAutomaton, Side,
};
use stabmod_core::metric::SUBGROUP_BUDGET;
use stabmod_core::{contains, zoo, FreeVector, LaurentPoly, Matrix, Ring, StabilizerCode, SubmodulePresentation, SymplecticSpace};

use super::Checker;
use crate::codefile::CodeFile;

fn upper(code: &StabilizerCode, normal: &[i64]) -> stabmod_core::Result<BoundaryModule> {
    BoundaryModule::compute(code, &HalfSpace::new(normal)?, Side::Upper, Default::default())
}

pub fn worked_example(c: &mut Checker) {
    let Some(code) = c.attempt("load", zoo::split_example()) else { return };
    let Some(b) = c.attempt("boundary", upper(&code, &[0, 1])) else { return };
    let ring = b.ring();
    let one_plus_xbar = ring.parse("1 + x^-1").expect("literal parses");
    let entry = b.gram().get(0, 1).clone();
    c.check("primary Gram entry", b.primary_count() == 2 && entry == one_plus_xbar, format!("Ω(e1, e2) = {entry}"));
    if let Some(e) = c.attempt("primary E", b.primary_module().and_then(|p| p.e_module())) {
        let factors = e.invariant_factors();
        // x acting trivially makes E a module over F_2[x^±]/(1+x).
        let trivial_action = e.action().iter().enumerate().all(|(i, row)| row.iter().enumerate().all(|(j, &v)| v == u64::from(i == j)));
        c.check("primary E is (F2[x]/(1+x))^2", factors == [2, 2] && trivial_action, format!("factors {factors:?}, action {:?}", e.action()));
    }
    let k = b.rank();
    let e1 = FreeVector::unit(ring, k, 0);
    let one_plus_x = ring.parse("1 + x").expect("literal parses");
    match c.attempt("secondary", b.divide(&one_plus_x, &e1)) {
        Some(Some(y)) => {
            let primary = b.is_primary(&y).unwrap_or(true);
            c.check("secondary generator with (1+x)e1' = e1", !primary && b.has_secondaries(), format!("e1' = {y}"));
        }
        Some(None) => c.check("secondary generator with (1+x)e1' = e1", false, "no solution"),
        None => {}
    }
    if let Some(e) = c.attempt("full E", b.quasi_symplectic().and_then(|q| q.e_module())) {
        c.check("full boundary module symplectic", e.order() == 1, format!("|E| = {}", e.order()));
    }
}

/// Twenty test elements for the first summand of the X-cube charge module.
fn xcube_membership_fixtures(ring: Ring) -> Vec<LaurentPoly> {
    let p = |s: &str| ring.parse(s).expect("literal parses");
    let monomials: Vec<LaurentPoly> =
        ["1", "x", "y", "z", "x*y", "x^-1*z", "y^2*z^-1", "x*y*z", "x^2*y^-1", "z^-2"].iter().map(|s| p(s)).collect();
    let generators: Vec<LaurentPoly> = ["1 + x + y + x*y", "1 + y + z + y*z", "1 + z + x + x*z"].iter().map(|s| p(s)).collect();
    let mut out: Vec<LaurentPoly> = monomials[..7].to_vec();
    out.extend(monomials[..6].iter().map(|m| m.clone() * p("1 + x")));
    out.extend(monomials[3..].iter().enumerate().map(|(i, m)| m.clone() * generators[i % 3].clone()));
    out
}

pub fn xcube(c: &mut Checker) {
    let Some(code) = c.attempt("load", zoo::xcube()) else { return };
    let ring = code.ring();
    let Some(q) = c.attempt("charge module", code.charge_module()) else { return };
    c.check("charge module infinite", q.is_finite() == Some(false), format!("{:?}", q.is_finite()));
    let ideal_gens = ["1 + x + y + x*y", "1 + y + z + y*z", "1 + z + x + x*z"]
        .iter()
        .map(|s| FreeVector::new(ring, vec![ring.parse(s).expect("literal parses")]))
        .collect();
    let ideal = SubmodulePresentation::new(ring, 1, ideal_gens).expect("rank 1");
    let fixtures = xcube_membership_fixtures(ring);
    let mut agree = 0;
    let mut zero = 0;
    let mut detail = Vec::new();
    for f in &fixtures {
        let f = f.clone();
        let h = FreeVector::new(ring, vec![f.clone(), ring.zero(), ring.zero()]);
        let in_ideal = contains(&ideal, &FreeVector::new(ring, vec![f])).unwrap_or(false);
        let vanishes = q.quotient.is_functional(&h) && q.quotient.is_zero_class(&h);
        if in_ideal == vanishes {
            agree += 1;
        } else {
            detail.push(h.get(0).to_string());
        }
        zero += usize::from(in_ideal);
    }
    c.check(
        "20 membership tests agree with R/(1+x+y+xy, 1+y+z+yz, 1+z+x+xz)",
        fixtures.len() == 20 && agree == 20 && zero > 0 && zero < 20,
        format!("{agree}/{} agree, {zero} in the ideal, disagreeing: {detail:?}", fixtures.len()),
    );
    if let Some(axis) = c.attempt("axis mobility", mobility(&code, &[0, 0, 1], 4)) {
        c.check("axis search up to degree 4 is inconclusive", axis.status == MobilityStatus::Inconclusive, format!("{:?}", axis.status));
    }
    let z = ring.parse("z").expect("literal parses");
    let h = FreeVector::new(ring, vec![z.clone(), ring.zero(), ring.zero()]);
    if let Some(p) = c.attempt("pairing", upper_pairing(&code, &[0, 0, 1], &h, &h)) {
        c.check("class <z> pairs to 1 with an operator in the upper half", p.value == 1 && p.in_upper_half && p.class_nonzero, format!("{p:?}"));
    }
    let Some(hs) = c.attempt("half-space", HalfSpace::new(&[1, 1, 1])) else { return };
    if let Some(slanted) = c.attempt("slanted mobility", mobility(&code, &[1, 1, 1], 4)) {
        c.check("slanted search finds annihilator pairs", slanted.status == MobilityStatus::Found && slanted.combined.is_some(), format!("{:?}", slanted.status));
        if slanted.status == MobilityStatus::Found {
            if let Some(lift) = c.attempt("lift check", lift_check(&code, &hs, &slanted, 2, 8)) {
                c.check("generators lift off L_{>=0} in the window", lift.all_lifted(), format!("powers {:?}", lift.powers));
            }
        }
    }
}

pub fn toric_directions(c: &mut Checker) {
    let Some(code) = c.attempt("load", zoo::toric(2)) else { return };
    let mut groups = Vec::new();
    for v in [[0, 1], [1, 0], [1, 1]] {
        let Some(g) = c.attempt("boundary", upper(&code, &v).and_then(|b| b.metric_group())) else { return };
        let lagrangians = g.lagrangian_search().lagrangians.len();
        let q_one = g.elements().iter().filter(|a| g.q_eval(a) == 1).count();
        c.check(
            format!("E for {v:?}"),
            g.order() == 4 && g.is_nondegenerate() && lagrangians == 2 && q_one == 1,
            format!("order {}, Lagrangians {lagrangians}, q=1 elements {q_one}", g.order()),
        );
        groups.push(g);
    }
    for i in 0..groups.len() {
        for j in i + 1..groups.len() {
            let iso = groups[i].iso_check(&groups[j]).map(|m| m.is_some()).unwrap_or(false);
            c.check(format!("iso {i}-{j}"), iso, "");
        }
    }
}

pub fn wen(c: &mut Checker) {
    let Some(code) = c.attempt("load", zoo::wen()) else { return };
    let Ok(hs) = HalfSpace::new(&[0, 1]) else { return };
    if let Some(b) = c.attempt("unit cell", upper(&code, &[0, 1])) {
        let Some(e) = c.attempt("E", b.quasi_symplectic().and_then(|q| q.e_module())) else { return };
        let Some(g) = c.attempt("metric group", e.metric_group()) else { return };
        let stable = g.lagrangian_search_with(SUBGROUP_BUDGET, &[e.action().to_vec()]);
        let all = g.lagrangian_search().lagrangians.len();
        c.check(
            "no translation-stable Lagrangian at unit cell",
            stable.lagrangians.is_empty() && !stable.partial,
            format!("|E| = {}, Lagrangians {all}, stable {}", g.order(), stable.lagrangians.len()),
        );
    }
    if let Some(b) = c.attempt("coarse", boundary_of_coarse(&code, &hs, 2, Default::default())) {
        let Some(qs) = c.attempt("coarse module", b.quasi_symplectic()) else { return };
        let Some(m) = c.attempt("metabolicity", qs.is_metabolic()) else { return };
        let Some(e) = c.attempt("coarse E", qs.e_module()) else { return };
        let Some(g) = c.attempt("coarse metric group", e.metric_group()) else { return };
        let verified = m.witnesses.iter().all(|w| g.is_lagrangian(w) && g.is_stable(w, e.action()));
        c.check(
            "metabolic after coarse-graining by 2",
            m.metabolic && m.exhaustive && verified && !m.witnesses.is_empty(),
            format!("|E| = {}, witnesses {:?}", g.order(), m.witnesses.iter().map(|w| &w.generators).collect::<Vec<_>>()),
        );
    }
}

pub fn torus_counting(c: &mut Checker) {
    let Some(toric) = c.attempt("load", zoo::toric(2)) else { return };
    let Some(trivial) = c.attempt("load", zoo::trivial(2, 2)) else { return };
    for t in [2u32, 3] {
        if let Some(data) = c.attempt("torus", toric.torus(&[t, t])) {
            let total = 1u128 << (2 * t * t);
            c.check(
                format!("toric on ({t},{t})"),
                data.stabilized_dimension == 4 && data.stabilized_dimension * data.image_order == total,
                format!("dimension {}, |L_T| {}", data.stabilized_dimension, data.image_order),
            );
        }
        if let Some(data) = c.attempt("torus", trivial.torus(&[t, t])) {
            c.check(format!("trivial on ({t},{t})"), data.stabilized_dimension == 1, format!("dimension {}", data.stabilized_dimension));
        }
    }
}

fn shear() -> stabmod_core::Result<QcaAutomaton> {
    let ring = Ring::new(2, 2)?;
    let f = ring.parse("x^-1*y^-1 + y^-1 + y + x*y")?;
    let m = Matrix::from_rows(ring, vec![vec![ring.one(), f], vec![ring.zero(), ring.one()]])?;
    QcaAutomaton::new(SymplecticSpace::new(ring, 1)?, m)
}

pub fn qca(c: &mut Checker) {
    let Some(trivial) = c.attempt("load", zoo::trivial(2, 2)) else { return };
    let Some(split) = c.attempt("load", zoo::split_example()) else { return };
    let Some(shear) = c.attempt("automorphism", shear()) else { return };
    let identity = QcaAutomaton::identity(trivial.space());
    let hs = HalfSpace::standard(2);
    for (name, code, alpha) in [("trivial", &trivial, &identity), ("split", &split, &shear)] {
        if let Some(s) = c.attempt("split check", code.split_check()) {
            c.check(format!("{name}: split"), s.quotient_free && s.charges_vanish && s.code_free, format!("{s:?}"));
        }
        if let Some(cmp) = c.attempt("comparison", qca_vs_boundary_check(alpha, code, &hs, Default::default())) {
            c.check(format!("{name}: boundary algebra matches P_∂"), cmp.isomorphic(), format!("{cmp:?}"));
            for r in [cmp.spread.max(1), cmp.spread.max(1) + 1] {
                if let Some(a) = c.attempt("algebra", qca_boundary_algebra(alpha, &hs, r)) {
                    let symplectic = a.b_symplectic == Some(true) && a.d_symplectic == Some(true);
                    c.check(
                        format!("{name}: B^{r} vs B^{} Witt-stable", r + 1),
                        a.next_layer_split && a.orthogonal && a.spanning && symplectic,
                        format!(
                            "spread {}, ranks {}/{}, symplectic {:?}/{:?}, orthogonal {}, spanning {}, split {}",
                            a.spread, a.b_rank, a.d_rank, a.b_symplectic, a.d_symplectic, a.orthogonal, a.spanning, a.next_layer_split
                        ),
                    );
                }
            }
        }
    }
    if let Some(s) = c.attempt("toric split check", zoo::toric(2).and_then(|t| t.split_check())) {
        c.check("toric: not split, so excluded", !s.charges_vanish, format!("{s:?}"));
    }
}

pub fn negative_controls(c: &mut Checker) {
    for (n, row, col, text) in [(3u64, 3usize, 1usize, "1 + x"), (2, 0, 0, "1")] {
        let Some(code) = c.attempt("load", zoo::toric(n)) else { return };
        let mut file = CodeFile::from_code("corrupted", &code);
        file.sigma[row][col] = text.to_string();
        match file.to_code("corrupted.json") {
            Ok(_) => c.check(format!("corrupted Z_{n} toric rejected"), false, "loaded"),
            Err(e) => c.check(format!("corrupted Z_{n} toric rejected"), e.to_string().contains("do not commute"), e.to_string()),
        }
    }
    let non_lagrangian = Ring::new(2, 2)
        .map_err(stabmod_core::Error::from)
        .and_then(|ring| StabilizerCode::from_columns(ring, 2, &[FreeVector::unit(ring, 4, 0)]));
    if let Some(code) = c.attempt("load", non_lagrangian) {
        let cert = code.lagrangian_certificate();
        c.check(
            "isotropic code with larger complement",
            cert.isotropic && cert.complement_equals_code == Some(false) && cert.complement_witness.is_some(),
            format!("witness {:?}", cert.complement_witness.map(|w| w.to_string())),
        );
    }
    let Some(code) = c.attempt("load", zoo::xcube()) else { return };
    if let Some(r) = c.attempt("mobility", mobility(&code, &[0, 0, 1], 1)) {
        let json = serde_json::to_value(&r).expect("serializes");
        c.check(
            "exhausted search reports inconclusive",
            r.status == MobilityStatus::Inconclusive && json["status"] == "Inconclusive",
            format!("status {}", json["status"]),
        );
    }
}
