//! (Semi)stability for diagonalized torus actions on a vector space.
//!
//! A torus action is encoded by one integral weight vector per coordinate.
//! Projective semistability of a point is membership of the origin in the
//! hull of its support weights; the character-twisted affine variants ask
//! for the character inside the cone spanned by the support weights. The
//! stable variants additionally require the admissible-cocharacter face
//! `{ l : <chi_i, l> >= 0, <rho, l> = 0 }` to be trivial, which rules out
//! positive-dimensional stabilizers.
//!
//! [`hm_brute_oracle`] enumerates integral cocharacters in a box and checks
//! the pairing quantifier directly; it exists purely to cross-validate the
//! polytope route and shares no code with it beyond vector arithmetic.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::linalg::QVector;
use crate::polyhedra::{self, ConeGenerators, PointSet, RayScale};
use crate::rational::Rational;

/// A torus of rank `r` acting diagonally on an `n`-dimensional space:
/// coordinate `i` carries the integral weight `weights[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusRep {
    rank: usize,
    weights: Vec<QVector>,
}

impl TorusRep {
    pub fn new(rank: usize, weights: Vec<QVector>) -> Result<Self> {
        for w in &weights {
            if w.len() != rank {
                return Err(Error::Dimension(format!(
                    "weight of length {}, expected rank {rank}",
                    w.len()
                )));
            }
            if w.iter().any(|c| !c.is_integer()) {
                return Err(Error::Invalid(format!("non-integral weight {w:?}")));
            }
        }
        Ok(TorusRep { rank, weights })
    }

    pub fn from_int_weights(rank: usize, weights: &[&[i64]]) -> Result<Self> {
        TorusRep::new(
            rank,
            weights.iter().map(|w| QVector::from_ints(w)).collect(),
        )
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[QVector] {
        &self.weights
    }

    fn check_point(&self, v: &QVector) -> Result<()> {
        if v.len() != self.dim() {
            return Err(Error::Dimension(format!(
                "point of length {}, expected {}",
                v.len(),
                self.dim()
            )));
        }
        Ok(())
    }

    fn check_character(&self, rho: &QVector) -> Result<()> {
        if rho.len() != self.rank {
            return Err(Error::Dimension(format!(
                "character of length {}, expected rank {}",
                rho.len(),
                self.rank
            )));
        }
        Ok(())
    }
}

/// The deduplicated set of weights carried by the non-zero coordinates of
/// `v`.
pub fn support_weights(rep: &TorusRep, v: &QVector) -> Result<PointSet> {
    rep.check_point(v)?;
    let mut seen: Vec<QVector> = Vec::new();
    for (i, w) in rep.weights.iter().enumerate() {
        if !v[i].is_zero() && !seen.contains(w) {
            seen.push(w.clone());
        }
    }
    PointSet::new(rep.rank, seen)
}

/// Projective semistability: the origin lies in the hull of the support
/// weights. Undefined (an error) for the zero vector.
pub fn is_ss_projective(rep: &TorusRep, v: &QVector) -> Result<bool> {
    rep.check_point(v)?;
    if v.is_zero() {
        return Err(Error::Invalid(
            "projective semistability of the zero vector".into(),
        ));
    }
    let support = support_weights(rep, v)?;
    polyhedra::in_convex_hull(&QVector::zeros(rep.rank), &support)
}

/// Projective stability: no non-zero cocharacter pairs non-negatively with
/// every support weight, i.e. the dual cone of the support is trivial.
pub fn is_stable_projective(rep: &TorusRep, v: &QVector) -> Result<bool> {
    rep.check_point(v)?;
    if v.is_zero() {
        return Err(Error::Invalid(
            "projective stability of the zero vector".into(),
        ));
    }
    let support = support_weights(rep, v)?;
    dual_cone_is_trivial(rep.rank, &support)
}

/// Character-twisted semistability: some positive multiple of `rho` is a
/// non-negative combination of the support weights. The zero vector is
/// semistable only for the trivial character.
pub fn is_rho_ss(rep: &TorusRep, v: &QVector, rho: &QVector) -> Result<bool> {
    rep.check_point(v)?;
    rep.check_character(rho)?;
    let support = support_weights(rep, v)?;
    polyhedra::in_cone(rho, &ConeGenerators::from_points(&support))
}

/// Character-twisted stability: semistable, and the admissible-cocharacter
/// face `{ l : <chi_i, l> >= 0, <rho, l> = 0 }` is trivial. Triviality is
/// probed against the standard basis, which simultaneously rules out
/// cocharacters in the stabilizer (those annihilating every support weight)
/// and non-strict pairings.
pub fn is_rho_stable(rep: &TorusRep, v: &QVector, rho: &QVector) -> Result<bool> {
    rep.check_point(v)?;
    rep.check_character(rho)?;
    if v.is_zero() {
        return Ok(false);
    }
    if !is_rho_ss(rep, v, rho)? {
        return Ok(false);
    }
    let support = support_weights(rep, v)?;
    let basis_probes = PointSet::new(
        rep.rank,
        (0..rep.rank)
            .map(|i| {
                let mut e = QVector::zeros(rep.rank);
                e[i] = Rational::one();
                e
            })
            .collect(),
    )?;
    polyhedra::cone_face_in_subspace(&ConeGenerators::from_points(&support), rho, &basis_probes)
}

/// Null-cone membership: the zero vector, and every non-zero vector whose
/// support hull misses the origin.
pub fn in_null_cone(rep: &TorusRep, v: &QVector) -> Result<bool> {
    rep.check_point(v)?;
    if v.is_zero() {
        return Ok(true);
    }
    Ok(!is_ss_projective(rep, v)?)
}

/// Least positive integer `d` such that `rho / d` lies in the hull of the
/// support weights together with the origin; `None` when the point is not
/// `rho`-semistable (no finite degree exists).
pub fn halic_min_degree(rep: &TorusRep, v: &QVector, rho: &QVector) -> Result<Option<u64>> {
    rep.check_point(v)?;
    rep.check_character(rho)?;
    if v.is_zero() {
        return Err(Error::Invalid(
            "minimal twist degree of the zero vector".into(),
        ));
    }
    if rho.is_zero() {
        return Ok(Some(1));
    }
    if !is_rho_ss(rep, v, rho)? {
        return Ok(None);
    }
    let augmented = support_weights(rep, v)?.with_origin();
    match polyhedra::max_ray_scale(rho, &augmented)? {
        Some(RayScale::Finite(t)) => {
            // least integer d with 1/d <= t
            let d = t.recip()?.ceil_int().max(BigInt::from(1));
            Ok(Some(d.to_u64().ok_or_else(|| {
                Error::TooLarge("twist degree exceeds u64".into())
            })?))
        }
        Some(RayScale::Unbounded) => Ok(Some(1)),
        None => unreachable!("semistable points meet the augmented hull"),
    }
}

/// Independent test oracle for the twisted semistability quantifier:
/// enumerate every integral cocharacter with sup-norm at most `bound` and
/// check that each one whose limit exists pairs non-negatively with `rho`.
/// Runs on machine integers (weights are integral by construction; `rho`
/// must be integral here), sharing nothing with the LP route.
pub fn hm_brute_oracle(rep: &TorusRep, v: &QVector, rho: &QVector, bound: u32) -> Result<bool> {
    rep.check_point(v)?;
    rep.check_character(rho)?;
    if bound == 0 {
        return Err(Error::Invalid("oracle bound must be at least 1".into()));
    }
    let to_ints = |w: &QVector| -> Result<Vec<i64>> {
        w.iter()
            .map(|c| {
                c.to_i64()
                    .ok_or_else(|| Error::Invalid(format!("non-integral coordinate {c}")))
            })
            .collect()
    };
    let support: Vec<Vec<i64>> = rep
        .weights
        .iter()
        .enumerate()
        .filter(|(i, _)| !v[*i].is_zero())
        .map(|(_, w)| to_ints(w))
        .collect::<Result<_>>()?;
    let rho_ints = to_ints(rho)?;
    let pair = |w: &[i64], lam: &[i64]| -> i64 { w.iter().zip(lam).map(|(a, b)| a * b).sum() };
    let b = bound as i64;
    let mut lambda = vec![-b; rep.rank];
    loop {
        let limit_exists = support.iter().all(|w| pair(w, &lambda) >= 0);
        if limit_exists && pair(&rho_ints, &lambda) < 0 {
            return Ok(false);
        }
        // odometer step
        let mut i = 0;
        loop {
            if i == rep.rank {
                return Ok(true);
            }
            lambda[i] += 1;
            if lambda[i] <= b {
                break;
            }
            lambda[i] = -b;
            i += 1;
        }
    }
}

/// Triviality of the dual cone `{ l : <chi, l> >= 0 for all chi }`, probed
/// against the standard basis.
fn dual_cone_is_trivial(rank: usize, support: &PointSet) -> Result<bool> {
    let basis = PointSet::new(
        rank,
        (0..rank)
            .map(|i| {
                let mut e = QVector::zeros(rank);
                e[i] = Rational::one();
                e
            })
            .collect(),
    )?;
    polyhedra::cone_face_in_subspace(
        &ConeGenerators::from_points(support),
        &QVector::zeros(rank),
        &basis,
    )
}
