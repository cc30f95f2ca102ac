//! Built-in regression suite: deterministic goldens over every module,
//! runnable without input files. Each check yields one pass/fail row.

use nrgit_core::borel::{self, BorelElem, ConjugacyWitness, Mat2};
use nrgit_core::graded::{self, SampledCheck, Status};
use nrgit_core::quiver::{self, Arrow, Quiver, RankVector, StabilityParam};
use nrgit_core::rational::Rational;
use nrgit_core::rng::SplitMix64;
use nrgit_core::torus::{self, TorusRep};
use nrgit_core::truncpoly::{AmMatrix, TruncPoly};
use nrgit_core::QVector;

use crate::io::CliResult;
use crate::report::VerdictRow;

fn q(n: i64) -> Rational {
    Rational::from_int(n)
}

fn random_mat(rng: &mut SplitMix64) -> Mat2 {
    Mat2::new(
        rng.next_rational(4, 3),
        rng.next_rational(4, 3),
        rng.next_rational(4, 3),
        rng.next_rational(4, 3),
    )
}

struct Suite {
    rows: Vec<VerdictRow>,
}

impl Suite {
    fn record(&mut self, name: &str, reason: &str, passed: bool) {
        self.rows.push(VerdictRow::new(
            name,
            "regression",
            if passed { "pass" } else { "fail" },
            reason,
        ));
    }
}

pub fn run(seed: u64) -> CliResult<Vec<VerdictRow>> {
    let mut suite = Suite { rows: Vec::new() };

    // plane locus: twisted semistability off the axes only
    {
        let rep = TorusRep::from_int_weights(2, &[&[1, 0], &[0, 1]])?;
        let rho = QVector::from_ints(&[1, 1]);
        let mut ok = true;
        for x in -2..=2i64 {
            for y in -2..=2i64 {
                let v = QVector::from_ints(&[x, y]);
                ok &= torus::is_rho_ss(&rep, &v, &rho)? == (x != 0 && y != 0);
            }
        }
        suite.record(
            "plane-twisted-locus",
            "semistable exactly off the coordinate axes",
            ok,
        );
        let v = QVector::from_ints(&[1, 1]);
        suite.record(
            "plane-min-twist-degree",
            "minimal degree is two",
            torus::halic_min_degree(&rep, &v, &rho)? == Some(2),
        );
    }

    // two-by-two fixtures: loci, quotients, graded agreement
    {
        let mut rng = SplitMix64::new(seed ^ 0x01);
        let (conj_rep, _) = borel::conjugation_graded_rep();
        let (lm_rep, _) = borel::leftmult_graded_rep();
        let mut ok = true;
        for _ in 0..100 {
            let m = random_mat(&mut rng);
            ok &= borel::conj_ss(&m) == !m.c.is_zero();
            ok &= borel::leftmult_ss(&m) == !(m.c.is_zero() && m.d.is_zero());
            let v = m.to_vector();
            ok &=
                graded::uhat_semistable(&conj_rep, &v, None)?.is_semistable() == borel::conj_ss(&m);
            ok &= graded::uhat_semistable(&lm_rep, &v, None)?.is_semistable()
                == borel::leftmult_ss(&m);
            if borel::conj_ss(&m) {
                let g = BorelElem::new(rng.next_nonzero_rational(4, 3), rng.next_rational(4, 3))?;
                ok &= borel::conj_quotient(&m) == borel::conj_quotient(&borel::conj_act(&g, &m));
            }
            if borel::leftmult_ss(&m) {
                let g = BorelElem::new(rng.next_nonzero_rational(4, 3), rng.next_rational(4, 3))?;
                ok &= borel::leftmult_quotient(&m)
                    == borel::leftmult_quotient(&borel::leftmult_act(&g, &m));
            }
        }
        suite.record(
            "two-by-two-fixtures",
            "loci, invariance of quotient maps, graded agreement",
            ok,
        );

        suite.record(
            "two-by-two-stabilizers",
            "sampled stabilizer condition holds on both fixtures",
            graded::check_u_cond_sampled(&conj_rep, 30, seed)? == SampledCheck::HoldsOnSample
                && graded::check_u_cond_sampled(&lm_rep, 30, seed)? == SampledCheck::HoldsOnSample,
        );

        // orbit separation on a few random fibers
        let mut ok = true;
        for _ in 0..20 {
            let mut m = random_mat(&mut rng);
            m.c = rng.next_nonzero_rational(4, 3);
            let c2 = rng.next_nonzero_rational(4, 3);
            let a2 = rng.next_rational(4, 3);
            let d2 = &m.trace() - &a2;
            let b2 = &(&(&a2 * &d2) - &m.det()) / &c2;
            let m2 = Mat2::new(a2, b2, c2, d2);
            ok &= match borel::conj_orbit_witness(&m, &m2)? {
                ConjugacyWitness::Exact(g) => borel::conj_act(&g, &m) == m2,
                ConjugacyWitness::OverQuadraticExtension { t_squared, .. } => {
                    &m.c / &m2.c == t_squared
                }
            };
        }
        suite.record(
            "conjugation-orbit-separation",
            "equal invariants admit a witness",
            ok,
        );

        // equality criterion: negative twist agrees, trivial twist disagrees
        let mut ok = graded::equality_condition(&conj_rep, -1)
            && graded::equality_condition(&lm_rep, -1)
            && !graded::equality_condition(&conj_rep, 0);
        for _ in 0..50 {
            let v = random_mat(&mut rng).to_vector();
            ok &= graded::hm_rho_ss_uhat(&conj_rep, &v, -1, None)?.status
                == graded::uhat_semistable(&conj_rep, &v, None)?.status;
        }
        let witness = Mat2::from_ints(0, 1, 0, 0).to_vector();
        ok &= graded::hm_rho_ss_uhat(&conj_rep, &witness, 0, None)?.status == Status::Semistable
            && graded::uhat_semistable(&conj_rep, &witness, None)?.status == Status::Unstable;
        suite.record(
            "equality-criterion",
            "membership notions coincide exactly for negative twists",
            ok,
        );
    }

    // cycle quiver: membership grid, quotient invariance, notion ordering
    {
        let shape = quiver::cycle2_quiver();
        let rho = StabilityParam::from_slice(&shape, &[1, -1])?;
        let mut ok = true;
        let mut gap = false;
        for a1 in -1..=1i64 {
            for b1 in -1..=1i64 {
                for a2 in -1..=1i64 {
                    for b2 in -1..=1i64 {
                        let phi = quiver::cycle2_rep(q(a1), q(b1), q(a2), q(b2));
                        ok &= quiver::qss_membership(&phi, &rho)? == (a2 != 0);
                        let strong = quiver::nrgit_stable(&phi, &rho, None)?;
                        let weak = quiver::rudakov_stable_toric(&phi, &rho)?;
                        ok &= !strong || weak;
                        gap |= weak && !strong;
                    }
                }
            }
        }
        suite.record(
            "cycle-membership-grid",
            "membership tracks the second arrow",
            ok,
        );
        suite.record(
            "stability-notion-gap",
            "a weakly-but-not-strongly stable point exists",
            gap,
        );

        let mut rng = SplitMix64::new(seed ^ 0x02);
        let mut ok = true;
        for _ in 0..50 {
            let phi = quiver::cycle2_rep(
                rng.next_rational(3, 2),
                rng.next_rational(3, 2),
                rng.next_nonzero_rational(3, 2),
                rng.next_rational(3, 2),
            );
            let mut mats = std::collections::BTreeMap::new();
            for v in phi.quiver().vertices() {
                let coeffs = vec![rng.next_nonzero_rational(3, 2), rng.next_rational(3, 2)];
                mats.insert(
                    v.clone(),
                    AmMatrix::from_entries(1, 1, vec![TruncPoly::new(coeffs)?])?,
                );
            }
            let g = quiver::GroupElemMult::new(mats)?;
            ok &=
                quiver::cycle2_quotient(&phi)? == quiver::cycle2_quotient(&quiver::act(&g, &phi)?)?;
        }
        suite.record(
            "cycle-quotient-invariance",
            "quotient map constant on orbits",
            ok,
        );
    }

    // small toric panel: reductivity vs connectivity, nilpotency vs cycles
    {
        let mut ok_aut = true;
        let mut ok_nil = true;
        for nv in 1..=3usize {
            let vertices: Vec<String> = (1..=nv).map(|i| format!("v{i}")).collect();
            let pairs: Vec<(usize, usize)> =
                (0..nv).flat_map(|s| (0..nv).map(move |t| (s, t))).collect();
            for mask in 0u32..(1 << pairs.len()) {
                if mask.count_ones() > 4 {
                    continue;
                }
                let arrows: Vec<Arrow> = (0..pairs.len())
                    .filter(|&k| mask & (1 << k) != 0)
                    .enumerate()
                    .map(|(idx, k)| {
                        Arrow::new(
                            &format!("a{idx}"),
                            &vertices[pairs[k].0],
                            &vertices[pairs[k].1],
                        )
                    })
                    .collect();
                let shape = Quiver::new(vertices.clone(), arrows)?;
                let rank = RankVector::toric(&shape);
                let mats = shape
                    .arrows()
                    .iter()
                    .map(|a| {
                        (
                            a.id.clone(),
                            AmMatrix::from_entries(1, 1, vec![TruncPoly::from_ints(&[1, 0])])
                                .unwrap(),
                        )
                    })
                    .collect();
                let phi = quiver::RepMult::new(shape.clone(), 1, rank, mats)?;
                ok_aut &= quiver::nontrivial_aut_reductive(&phi)? == shape.is_connected()?;
                let classical = quiver::classical_truncation(&phi);
                ok_nil &= quiver::is_nilpotent_rep(&classical)?
                    == quiver::nilpotent_by_cycle_traces(&classical)?;
                ok_nil &= quiver::is_nilpotent_rep(&classical)? == !shape.has_directed_cycle();
            }
        }
        suite.record(
            "toric-reductivity-vs-connectivity",
            "linear-algebra and graph routes agree on the panel",
            ok_aut,
        );
        suite.record(
            "toric-nilpotency-cross-check",
            "topological and cycle-trace routes agree on the panel",
            ok_nil,
        );
    }

    Ok(suite.rows)
}
