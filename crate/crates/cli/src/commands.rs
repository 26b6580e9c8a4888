//! The `check`, `charges`, `boundary` and `witt` commands.

use std::time::Instant;

use serde::Serialize;
use serde_json::json;

use stabmod_core::boundary::{
    boundary_of_coarse, lift_check, mobility, BoundaryModule, BoundaryOptions, HalfSpace, MobilityStatus, Side,
};
use stabmod_core::lattice::IntMatrix;
use stabmod_core::metric::MetricGroup;
use stabmod_core::{Error, QuasiSymplectic1D, StabilizerCode};

use crate::codefile::{load_code, read, FormFile};
use crate::error::{CliError, CliResult};
use crate::report::Report;

/// Flags shared by the analysis commands.
#[derive(Clone, Debug)]
pub struct Options {
    pub normal: Option<Vec<i64>>,
    pub coarse: Vec<i64>,
    pub max_width: i32,
    pub degree: u32,
    pub torus_max: u32,
    pub primary: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options { normal: None, coarse: Vec::new(), max_width: 12, degree: 3, torus_max: 3, primary: false }
    }
}

/// Records unsupported-ring failures as partial results; other errors propagate.
fn partial<T>(r: stabmod_core::Result<T>, what: &str, notes: &mut Vec<String>) -> CliResult<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::Unsupported(msg)) => {
            notes.push(format!("{what}: {msg}"));
            Ok(None)
        }
        Err(e) => Err(e.into()),
    }
}

fn coarse_lattice(d: usize, factors: &[i64]) -> CliResult<IntMatrix> {
    if factors.len() > d || factors.iter().any(|&k| k < 1) {
        return Err(CliError::Usage(format!("--coarse takes at most {d} positive factors")));
    }
    Ok((0..d).map(|i| (0..d).map(|j| if i == j { factors.get(i).copied().unwrap_or(1) } else { 0 }).collect()).collect())
}

fn prepared(location: &str, opts: &Options) -> CliResult<(StabilizerCode, (String, String))> {
    let (file, code) = load_code(location)?;
    let input = (location.to_string(), file.digest());
    if opts.coarse.is_empty() {
        return Ok((code, input));
    }
    let lambda = coarse_lattice(code.ring().nvars, &opts.coarse)?;
    Ok((code.coarse_grain(&lambda)?, input))
}

#[derive(Serialize)]
struct MetricSummary {
    order: usize,
    invariant_factors: Vec<u64>,
    q_generators: Vec<u64>,
    b_gram: Vec<Vec<u64>>,
    nondegenerate: bool,
    lagrangians: Vec<Vec<Vec<u64>>>,
    search_partial: bool,
}

pub(crate) fn metric_summary(g: &MetricGroup) -> serde_json::Value {
    let search = g.lagrangian_search();
    serde_json::to_value(MetricSummary {
        order: g.order(),
        invariant_factors: g.invariant_factors().to_vec(),
        q_generators: g.q_generators().to_vec(),
        b_gram: g.b_gram().to_vec(),
        nondegenerate: g.is_nondegenerate(),
        lagrangians: search.lagrangians.into_iter().map(|s| s.generators).collect(),
        search_partial: search.partial,
    })
    .expect("summaries serialize")
}

pub fn check(location: &str, opts: &Options) -> CliResult<Report> {
    let started = Instant::now();
    let (code, input) = prepared(location, opts)?;
    let cert = code.lagrangian_certificate();
    let tier = match cert.complement_equals_code {
        Some(true) => "exact-true",
        Some(false) => "exact-false",
        None => "torus-only",
    };
    let mut tori = Vec::new();
    let mut skipped = Vec::new();
    for t in 1..=opts.torus_max {
        match code.torus(&vec![t; code.ring().nvars]) {
            Ok(data) => tori.push(data),
            Err(Error::Budget(msg)) => skipped.push(msg),
            Err(e) => return Err(e.into()),
        }
    }
    let result = json!({
        "modulus": code.ring().n,
        "dimension": code.ring().nvars,
        "sites": code.sites(),
        "generators": code.generator_count(),
        "isotropic": cert.isotropic,
        "lagrangian": tier,
        "complement_witness": cert.complement_witness.map(|w| w.to_string()),
        "torus_battery": cert.torus_battery,
        "tori": tori,
        "tori_skipped": skipped,
    });
    Report::new("check", Some(input), result, Vec::new(), started)
}

pub fn charges(location: &str, opts: &Options) -> CliResult<Report> {
    let started = Instant::now();
    let (code, input) = prepared(location, opts)?;
    let mut notes = Vec::new();
    let result = match partial(code.charge_module(), "charge module", &mut notes)? {
        None => json!({ "supported": false }),
        Some(q) => {
            let finite = q.is_finite();
            if finite.is_none() {
                notes.push("charge module: finiteness undecided for this modulus".into());
            }
            let p = q.presentation();
            json!({
                "supported": true,
                "finite": finite,
                "order": q.order(),
                "invariant_factors": q.invariant_factors(),
                "detector_count": q.detectors().map(|d| d.len()).ok(),
                "presentation": {
                    "rank": p.rank,
                    "relations": p.relations.generators().iter().map(ToString::to_string).collect::<Vec<_>>(),
                    "invariant_factors": p.invariant_factors.as_ref().map(|f| f.iter().map(ToString::to_string).collect::<Vec<_>>()),
                },
                "syzygies": q.syzygies.generators().iter().map(ToString::to_string).collect::<Vec<_>>(),
            })
        }
    };
    Report::new("charges", Some(input), result, notes, started)
}

fn half_space(code: &StabilizerCode, opts: &Options) -> CliResult<HalfSpace> {
    let d = code.ring().nvars;
    match &opts.normal {
        Some(v) if v.len() != d => Err(CliError::Usage(format!("--normal needs {d} components"))),
        Some(v) => Ok(HalfSpace::new(v)?),
        None => Ok(HalfSpace::standard(d)),
    }
}

fn e_summary(qs: &QuasiSymplectic1D, notes: &mut Vec<String>) -> CliResult<serde_json::Value> {
    let validation = qs.validate()?;
    let Some(g) = partial(qs.metric_group(), "metric group", notes)? else {
        return Ok(json!({ "validation": validation }));
    };
    let metabolic = partial(qs.is_metabolic(), "metabolicity", notes)?;
    let e = partial(qs.e_module(), "E module", notes)?;
    Ok(json!({
        "validation": validation,
        "metric_group": metric_summary(&g),
        "period": e.as_ref().map(|e| e.period()),
        "translation_action": e.as_ref().map(|e| e.action().to_vec()),
        "metabolic": metabolic.as_ref().map(|m| m.metabolic),
        "stable_lagrangians": metabolic.map(|m| m.witnesses.into_iter().map(|s| s.generators).collect::<Vec<_>>()),
    }))
}

pub fn boundary(location: &str, opts: &Options) -> CliResult<Report> {
    let started = Instant::now();
    let (file, code) = load_code(location)?;
    let input = (location.to_string(), file.digest());
    let hs = half_space(&code, opts)?;
    let bopts = BoundaryOptions { max_height: opts.max_width, start_height: None };
    let coarse = match opts.coarse.as_slice() {
        [] => None,
        [k] if *k >= 1 => Some(*k),
        _ => return Err(CliError::Usage("boundary takes one --coarse factor along the boundary".into())),
    };
    let bm = match coarse {
        Some(k) => boundary_of_coarse(&code, &hs, k, bopts)?,
        None => BoundaryModule::compute(&code, &hs, Side::Upper, bopts)?,
    };
    let mut notes = Vec::new();
    let mut result = json!({
        "normal": hs.normal(),
        "coarse": coarse,
        "height": bm.height(),
        "rank": bm.rank(),
        "primary_count": bm.primary_count(),
        "secondaries": bm.has_secondaries(),
        "generators": bm.generators().iter().map(ToString::to_string).collect::<Vec<_>>(),
        "gram": bm.gram().to_rows(),
        "relations": bm.relations().generators().iter().map(ToString::to_string).collect::<Vec<_>>(),
        "width_certificate": bm.certificate(),
        "lagrangian_checked": bm.lagrangian_checked(),
    });
    if bm.ring().nvars == 1 {
        result["e"] = e_summary(&bm.quasi_symplectic()?, &mut notes)?;
        result["primary_e"] = e_summary(&bm.primary_module()?, &mut notes)?;
        if coarse.is_none() {
            if let Some(v) = partial(bm.v_map(&code), "boundary-to-bulk map", &mut notes)? {
                result["v_map"] = json!({
                    "injective": v.injective,
                    "surjective": v.surjective,
                    "e_order": v.e_order,
                    "q_order": v.q_order,
                });
            }
        }
    }
    if coarse.is_none() {
        if let Some(report) = partial(mobility(&code, hs.normal(), opts.degree), "mobility", &mut notes)? {
            if code.ring().nvars == 3 && report.status == MobilityStatus::Found {
                let lift = lift_check(&code, &hs, &report, bm.height().max(2), 8)?;
                result["lift_check"] = serde_json::to_value(lift).expect("serializes");
            }
            result["mobility"] = serde_json::to_value(report).expect("serializes");
        }
    }
    Report::new("boundary", Some(input), result, notes, started)
}

pub fn witt(location: &str, opts: &Options) -> CliResult<Report> {
    let started = Instant::now();
    let is_form = !location.starts_with("zoo:")
        && serde_json::from_str::<serde_json::Value>(&read(location)?).is_ok_and(|v| v.get("gram").is_some());
    let (qs, input) = if is_form {
        let file = FormFile::parse(&read(location)?, location)?;
        (file.to_form(location)?, (location.to_string(), file.digest()))
    } else {
        let (file, code) = load_code(location)?;
        let hs = half_space(&code, opts)?;
        let bopts = BoundaryOptions { max_height: opts.max_width, start_height: None };
        let bm = BoundaryModule::compute(&code, &hs, Side::Upper, bopts)?;
        let qs = if opts.primary { bm.primary_module()? } else { bm.quasi_symplectic()? };
        (qs, (location.to_string(), file.digest()))
    };
    let mut notes = Vec::new();
    let before = e_summary(&qs, &mut notes)?;
    let mut result = json!({ "rank": qs.rank(), "form": before });
    if let Some(red) = partial(qs.witt_reduce(), "Witt reduction", &mut notes)? {
        let after = red.reduced.is_metabolic()?;
        let lowered = red.over_prime_field.is_metabolic()?;
        let original = qs.is_metabolic()?;
        result["reduction"] = json!({
            "steps": red.steps,
            "reduced_rank": red.reduced.rank(),
            "reduced_gram": red.reduced.gram().to_rows(),
            "prime_field_gram": red.over_prime_field.gram().to_rows(),
            "reduced_metabolic": after.metabolic,
            "prime_field_metabolic": lowered.metabolic,
            "metabolicity_preserved": original.metabolic == after.metabolic && after.metabolic == lowered.metabolic,
        });
    }
    Report::new("witt", Some(input), result, notes, started)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn toric_checks_as_lagrangian() {
        let r = check("zoo:toric", &Options::default()).unwrap();
        assert_eq!(r.result["lagrangian"], "exact-true");
        assert_eq!(r.exit_code(), 0);
    }

    #[test]
    fn toric_charges() {
        let r = charges("zoo:toric", &Options::default()).unwrap();
        assert_eq!(r.result["order"], 4);
        assert_eq!(r.result["invariant_factors"], json!([2, 2]));
    }

    #[test]
    fn repeated_reports_agree() {
        let opts = Options { normal: Some(vec![0, 1]), ..Options::default() };
        let a = boundary("zoo:split", &opts).unwrap();
        let b = boundary("zoo:split", &opts).unwrap();
        assert_eq!(a.deterministic_json(), b.deterministic_json());
        assert_eq!(a.result["secondaries"], true);
    }

    #[test]
    fn witt_of_split_primary() {
        let opts = Options { normal: Some(vec![0, 1]), primary: true, ..Options::default() };
        let r = witt("zoo:split", &opts).unwrap();
        assert_eq!(r.result["form"]["metabolic"], true);
        assert_eq!(r.result["reduction"]["metabolicity_preserved"], true);
    }
}
