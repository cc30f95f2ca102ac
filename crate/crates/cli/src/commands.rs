//! Subcommand implementations: each produces the verdict rows of a report.

use std::collections::BTreeMap;

use serde_json::json;

use nrgit_core::borel::{self, Mat2};
use nrgit_core::graded::{self, GradedRep, SampledCheck, Status};
use nrgit_core::quiver::{self, Quiver, RankVector, RepMult, StabilityParam};
use nrgit_core::rational::Rational;
use nrgit_core::torus::{self, TorusRep};
use nrgit_core::truncpoly::{AmMatrix, TruncPoly};
use nrgit_core::{Error, QVector};

use crate::io::{CliError, CliResult};
use crate::report::VerdictRow;

fn status_of(verdict: &graded::SemistableVerdict) -> &'static str {
    match verdict.status {
        Status::Semistable => "semistable",
        Status::Unstable => "unstable",
        Status::NeedsOracle => "needs-oracle",
    }
}

fn vec_json(v: &QVector) -> serde_json::Value {
    json!(v.iter().map(|c| c.to_string()).collect::<Vec<_>>())
}

pub fn torus_check(
    rep: &TorusRep,
    points: &[QVector],
    rho: Option<&QVector>,
    bound: Option<u32>,
) -> CliResult<Vec<VerdictRow>> {
    let mut rows = Vec::new();
    for (i, v) in points.iter().enumerate() {
        let id = format!("point{i}");
        if v.is_zero() {
            rows.push(VerdictRow::new(
                &id,
                "projective-semistable",
                "undefined",
                "the zero vector has no projective class",
            ));
        } else {
            rows.push(VerdictRow::bool_status(
                &id,
                "projective-semistable",
                torus::is_ss_projective(rep, v)?,
                "origin lies in the hull of the support weights",
            ));
            rows.push(VerdictRow::bool_status(
                &id,
                "projective-stable",
                torus::is_stable_projective(rep, v)?,
                "no non-zero cocharacter pairs non-negatively with the whole support",
            ));
        }
        rows.push(VerdictRow::bool_status(
            &id,
            "outside-null-cone",
            !torus::in_null_cone(rep, v)?,
            "some non-constant invariant survives at the point",
        ));
        if let Some(rho) = rho {
            rows.push(VerdictRow::bool_status(
                &id,
                "twisted-semistable",
                torus::is_rho_ss(rep, v, rho)?,
                "character lies in the cone of the support weights",
            ));
            rows.push(VerdictRow::bool_status(
                &id,
                "twisted-stable",
                torus::is_rho_stable(rep, v, rho)?,
                "semistable with trivial admissible face",
            ));
            if !v.is_zero() {
                let degree = torus::halic_min_degree(rep, v, rho)?;
                let row = VerdictRow::new(
                    &id,
                    "min-twist-degree",
                    if degree.is_some() { "true" } else { "false" },
                    "least degree whose scaled character meets the augmented hull",
                )
                .with_witness(json!(degree));
                rows.push(row);
            }
            if let Some(b) = bound {
                let oracle = torus::hm_brute_oracle(rep, v, rho, b)?;
                let lp = torus::is_rho_ss(rep, v, rho)?;
                rows.push(
                    VerdictRow::bool_status(
                        &id,
                        "oracle-agreement",
                        oracle == lp,
                        "bounded cocharacter enumeration against the cone test",
                    )
                    .with_witness(json!({ "bound": b, "oracle": oracle })),
                );
            }
        }
    }
    Ok(rows)
}

pub fn halic_degree(
    rep: &TorusRep,
    points: &[QVector],
    rho: &QVector,
) -> CliResult<Vec<VerdictRow>> {
    let mut rows = Vec::new();
    let mut degrees = Vec::new();
    for (i, v) in points.iter().enumerate() {
        let id = format!("point{i}");
        if v.is_zero() {
            rows.push(VerdictRow::new(
                &id,
                "min-twist-degree",
                "undefined",
                "the zero vector is excluded",
            ));
            continue;
        }
        let degree = torus::halic_min_degree(rep, v, rho)?;
        degrees.push(degree);
        rows.push(
            VerdictRow::new(
                &id,
                "min-twist-degree",
                if degree.is_some() { "true" } else { "false" },
                "least degree whose scaled character meets the augmented hull",
            )
            .with_witness(json!(degree)),
        );
    }
    let uniform = if degrees.iter().any(Option::is_none) || degrees.is_empty() {
        None
    } else {
        degrees.iter().map(|d| d.unwrap()).max()
    };
    rows.push(
        VerdictRow::new(
            "all-points",
            "uniform-twist-degree",
            if uniform.is_some() { "true" } else { "false" },
            "maximum of the pointwise degrees over the supplied points",
        )
        .with_witness(json!(uniform)),
    );
    Ok(rows)
}

pub fn graded_check(
    rep: &GradedRep,
    point: Option<&QVector>,
    rho: Option<i64>,
    trials: usize,
    seed: u64,
) -> CliResult<Vec<VerdictRow>> {
    let mut rows = Vec::new();
    let summary = graded::grading_summary(rep);
    rows.push(
        VerdictRow::new("rep", "grading-summary", "ok", "weight data of the grading").with_witness(
            json!({
                "omega_min": summary.omega_min,
                "omega_next": summary.omega_next,
                "vmin_indices": summary.vmin_indices,
            }),
        ),
    );
    match graded::check_u_cond_sampled(rep, trials, seed)? {
        SampledCheck::HoldsOnSample => rows.push(VerdictRow::new(
            "rep",
            "unipotent-stabilizer-sampled",
            "true",
            "trivial infinitesimal stabilizer at every sampled minimal-space point",
        )),
        SampledCheck::Counterexample(v) => rows.push(
            VerdictRow::new(
                "rep",
                "unipotent-stabilizer-sampled",
                "false",
                "a sampled minimal-space point has non-trivial stabilizer",
            )
            .with_witness(vec_json(&v)),
        ),
    }
    if let Some(rho) = rho {
        rows.push(VerdictRow::bool_status(
            "rep",
            "equality-criterion",
            graded::equality_condition(rep, rho),
            "negative twist, negative minimal weight, no other negative weight",
        ));
    }
    if let Some(v) = point {
        rows.push(VerdictRow::bool_status(
            "point0",
            "min-projection-nonzero",
            rep.in_vmin0(v)?,
            "projection to the minimal weight space is non-zero",
        ));
        let uhat = graded::uhat_semistable(rep, v, None)?;
        rows.push(VerdictRow::new(
            "point0",
            "graded-unipotent-membership",
            status_of(&uhat),
            &uhat.reason,
        ));
        if let Some(rho) = rho {
            let hm = graded::hm_rho_ss_uhat(rep, v, rho, None)?;
            rows.push(VerdictRow::new(
                "point0",
                "twisted-hm-membership",
                status_of(&hm),
                &hm.reason,
            ));
        }
        rows.push(VerdictRow::bool_status(
            "point0",
            "unipotent-stabilizer-at-point",
            graded::check_u_cond_at(rep, v)?,
            "columns of the Lie action at the point have full rank",
        ));
    }
    Ok(rows)
}

pub fn borel_demo(mat: Option<Mat2>) -> CliResult<Vec<VerdictRow>> {
    let samples: Vec<(String, Mat2)> = match mat {
        Some(m) => vec![("mat".to_string(), m)],
        None => vec![
            ("lower-elementary".to_string(), Mat2::from_ints(0, 0, 1, 0)),
            ("upper-elementary".to_string(), Mat2::from_ints(0, 1, 0, 0)),
            ("identity".to_string(), Mat2::from_ints(1, 0, 0, 1)),
            ("generic".to_string(), Mat2::from_ints(1, 2, 3, 4)),
        ],
    };
    let (conj_rep, _) = borel::conjugation_graded_rep();
    let (lm_rep, _) = borel::leftmult_graded_rep();
    let mut rows = Vec::new();
    rows.push(VerdictRow::bool_status(
        "conjugation",
        "equality-criterion-negative-twist",
        graded::equality_condition(&conj_rep, -1),
        "membership notions coincide for negative twists",
    ));
    rows.push(VerdictRow::bool_status(
        "left-multiplication",
        "equality-criterion-negative-twist",
        graded::equality_condition(&lm_rep, -1),
        "membership notions coincide for negative twists",
    ));
    for (id, m) in samples {
        let css = borel::conj_ss(&m);
        rows.push(VerdictRow::new(
            &id,
            "conjugation-semistable",
            if css { "semistable" } else { "unstable" },
            "bottom-left entry is non-zero",
        ));
        if css {
            let (tr, det) = borel::conj_quotient(&m)?;
            rows.push(
                VerdictRow::new(&id, "conjugation-quotient", "ok", "trace and determinant")
                    .with_witness(json!([tr.to_string(), det.to_string()])),
            );
            let (c, tr, det) = borel::conj_u_quotient(&m)?;
            rows.push(
                VerdictRow::new(
                    &id,
                    "conjugation-unipotent-quotient",
                    "ok",
                    "bottom-left entry, trace, determinant",
                )
                .with_witness(json!([
                    c.to_string(),
                    tr.to_string(),
                    det.to_string()
                ])),
            );
        }
        let lss = borel::leftmult_ss(&m);
        rows.push(VerdictRow::new(
            &id,
            "left-multiplication-semistable",
            if lss { "semistable" } else { "unstable" },
            "bottom row is non-zero",
        ));
        if lss {
            let (det, p) = borel::leftmult_quotient(&m)?;
            rows.push(
                VerdictRow::new(
                    &id,
                    "left-multiplication-quotient",
                    "ok",
                    "determinant and the projectivized bottom row",
                )
                .with_witness(json!([det.to_string(), p.to_string()])),
            );
            let (c, d, det) = borel::leftmult_u_quotient(&m)?;
            rows.push(
                VerdictRow::new(
                    &id,
                    "left-multiplication-unipotent-quotient",
                    "ok",
                    "bottom row and determinant",
                )
                .with_witness(json!([
                    c.to_string(),
                    d.to_string(),
                    det.to_string()
                ])),
            );
        }
        // the graded route recomputes both memberships
        let v = m.to_vector();
        let agrees = graded::uhat_semistable(&conj_rep, &v, None)?.is_semistable() == css
            && graded::uhat_semistable(&lm_rep, &v, None)?.is_semistable() == lss;
        rows.push(VerdictRow::bool_status(
            &id,
            "graded-membership-agrees",
            agrees,
            "graded trichotomy matches the direct tests",
        ));
    }
    Ok(rows)
}

pub fn quiver_check(phi: &RepMult, rho: Option<&[i64]>) -> CliResult<Vec<VerdictRow>> {
    let mut rows = Vec::new();
    let support = quiver::support_quiver(phi);
    rows.push(
        VerdictRow::new(
            "rep",
            "support-quiver",
            "ok",
            "arrows with non-zero classical part",
        )
        .with_witness(json!(support
            .arrows()
            .iter()
            .map(|a| a.id.clone())
            .collect::<Vec<_>>())),
    );
    rows.push(VerdictRow::bool_status(
        "rep",
        "support-connected",
        support.is_connected()?,
        "undirected connectivity over all vertices",
    ));
    rows.push(VerdictRow::bool_status(
        "rep",
        "outside-null-cone",
        !quiver::in_null_cone_quiver(phi)?,
        "classical truncation is not nilpotent",
    ));
    let stab = quiver::aut_stab_lie(phi)?;
    rows.push(
        VerdictRow::new(
            "rep",
            "stabilizer-lie-dimension",
            "ok",
            "dimension of the automorphism Lie algebra",
        )
        .with_witness(json!(stab.dim)),
    );
    rows.push(VerdictRow::bool_status(
        "rep",
        "reductive-automorphisms",
        quiver::nontrivial_aut_reductive(phi)?,
        "unipotent stabilizer of the extended truncation is the diagonal one",
    ));

    let Some(rho) = rho else {
        return Ok(rows);
    };
    let param = StabilityParam::from_slice(phi.quiver(), rho)?;
    rows.push(VerdictRow::bool_status(
        "rep",
        "stability-parameter-valid",
        param.is_valid_for(phi.quiver(), phi.rank()),
        "weights pair to zero with the rank vector",
    ));
    if phi.is_toric() {
        rows.push(VerdictRow::bool_status(
            "rep",
            "generic-parameter",
            quiver::is_generic(&param, phi.quiver())?,
            "no proper non-empty vertex subset sums to zero",
        ));
        let truncation = quiver::classical_truncation(phi);
        rows.push(VerdictRow::bool_status(
            "rep",
            "classical-semistable",
            quiver::king_ss_toric(&truncation, &param)?,
            "subrepresentation supports have non-negative weight",
        ));
        rows.push(VerdictRow::bool_status(
            "rep",
            "classical-stable",
            quiver::king_stable_toric(&truncation, &param)?,
            "subrepresentation supports have positive weight",
        ));
        match quiver::nrgit_stable(phi, &param, None) {
            Ok(stable) => rows.push(VerdictRow::new(
                "rep",
                "nrgit-stable",
                if stable { "semistable" } else { "unstable" },
                "stable truncation with reductive automorphisms",
            )),
            Err(Error::Invalid(msg)) => {
                rows.push(VerdictRow::new("rep", "nrgit-stable", "undefined", &msg))
            }
            Err(e) => return Err(e.into()),
        }
        match quiver::rudakov_stable_toric(phi, &param) {
            Ok(stable) => rows.push(VerdictRow::new(
                "rep",
                "rudakov-stable",
                if stable { "semistable" } else { "unstable" },
                "positive weight on every locally free subrepresentation",
            )),
            Err(e) => rows.push(VerdictRow::new(
                "rep",
                "rudakov-stable",
                "undefined",
                &e.to_string(),
            )),
        }
        match quiver::qss_membership(phi, &param) {
            Ok(member) => rows.push(VerdictRow::new(
                "rep",
                "moduli-membership",
                if member { "semistable" } else { "unstable" },
                "classical truncation is stable",
            )),
            Err(Error::Invalid(msg)) => rows.push(VerdictRow::new(
                "rep",
                "moduli-membership",
                "undefined",
                &msg,
            )),
            Err(e) => return Err(e.into()),
        }
        if let Ok(value) = quiver::cycle2_quotient(phi) {
            rows.push(
                VerdictRow::new(
                    "rep",
                    "cycle2-quotient",
                    "ok",
                    "quotient coordinates of the two-vertex cycle at multiplicity one",
                )
                .with_witness(json!([value.0.to_string(), value.1.to_string()])),
            );
        }
    } else {
        rows.push(VerdictRow::new(
            "rep",
            "stability",
            "unsupported",
            "general-rank stability needs an external classical decider",
        ));
    }
    Ok(rows)
}

pub fn quiver_enumerate(
    quiver_shape: &Quiver,
    m: usize,
    grid: &[i64],
    rho: &[i64],
) -> CliResult<Vec<VerdictRow>> {
    if quiver_shape.vertices().len() > 6 {
        return Err(CliError("enumeration is guarded at 6 vertices".into()));
    }
    let mut rows = Vec::new();
    if grid.is_empty() {
        return Ok(rows);
    }
    let param = StabilityParam::from_slice(quiver_shape, rho)?;
    let rank = RankVector::toric(quiver_shape);
    if !param.is_valid_for(quiver_shape, &rank) {
        return Err(CliError(
            "stability parameter does not sum to zero over the vertices".into(),
        ));
    }
    let slots = (m + 1) * quiver_shape.arrows().len();
    let total = (grid.len() as u64).checked_pow(slots as u32);
    match total {
        Some(t) if t <= 20_000 => {}
        _ => {
            return Err(CliError(format!(
                "enumeration of {}^{} coefficient patterns exceeds the guard of 20000",
                grid.len(),
                slots
            )))
        }
    }

    let mut counts: BTreeMap<&str, u64> = BTreeMap::new();
    for key in [
        "instances",
        "king-semistable",
        "king-stable",
        "nrgit-stable",
        "rudakov-stable",
        "connected-support",
        "nilpotent",
    ] {
        counts.insert(key, 0);
    }
    let mut indices = vec![0usize; slots];
    loop {
        let coeffs: Vec<i64> = indices.iter().map(|&i| grid[i]).collect();
        let mut mats = BTreeMap::new();
        for (ai, a) in quiver_shape.arrows().iter().enumerate() {
            let layer_coeffs = &coeffs[ai * (m + 1)..(ai + 1) * (m + 1)];
            mats.insert(
                a.id.clone(),
                AmMatrix::from_entries(
                    1,
                    1,
                    vec![TruncPoly::new(
                        layer_coeffs
                            .iter()
                            .map(|&c| Rational::from_int(c))
                            .collect(),
                    )?],
                )?,
            );
        }
        let phi = RepMult::new(quiver_shape.clone(), m, rank.clone(), mats)?;
        let truncation = quiver::classical_truncation(&phi);
        let king_ss = quiver::king_ss_toric(&truncation, &param)?;
        let king_stable = quiver::king_stable_toric(&truncation, &param)?;
        let nrgit = if param.is_zero() {
            false
        } else {
            quiver::nrgit_stable(&phi, &param, None)?
        };
        let rudakov = if param.is_zero() {
            false
        } else {
            quiver::rudakov_stable_toric(&phi, &param)?
        };
        let connected = quiver::support_quiver(&phi).is_connected()?;
        let nilpotent = quiver::in_null_cone_quiver(&phi)?;
        *counts.get_mut("instances").unwrap() += 1;
        for (key, value) in [
            ("king-semistable", king_ss),
            ("king-stable", king_stable),
            ("nrgit-stable", nrgit),
            ("rudakov-stable", rudakov),
            ("connected-support", connected),
            ("nilpotent", nilpotent),
        ] {
            if value {
                *counts.get_mut(key).unwrap() += 1;
            }
        }
        let id = format!(
            "phi[{}]",
            coeffs
                .iter()
                .map(i64::to_string)
                .collect::<Vec<_>>()
                .join(",")
        );
        rows.push(
            VerdictRow::new(&id, "instance", "ok", "per-instance verdicts").with_witness(json!({
                "king_semistable": king_ss,
                "king_stable": king_stable,
                "nrgit_stable": nrgit,
                "rudakov_stable": rudakov,
                "connected_support": connected,
                "nilpotent": nilpotent,
            })),
        );

        // odometer
        let mut slot = 0;
        loop {
            if slot == slots {
                for (key, value) in &counts {
                    rows.push(
                        VerdictRow::new("summary", &format!("count-{key}"), "ok", "tally")
                            .with_witness(json!(value)),
                    );
                }
                return Ok(rows);
            }
            indices[slot] += 1;
            if indices[slot] < grid.len() {
                break;
            }
            indices[slot] = 0;
            slot += 1;
        }
    }
}
