//! Affine semistability for graded groups: grading data, pointwise and
//! sampled unipotent-stabilizer checks, the explicit semistable-locus
//! membership tests split on the sign of the minimal weight, the twisted
//! Hilbert-Mumford loci, and the criterion for the three semistable notions
//! to coincide.
//!
//! A [`GradedRep`] packages the multiplicative-group weight of every
//! coordinate together with matrices for a basis of the Lie algebra of the
//! unipotent group. Where a membership test needs a unipotent orbit of a
//! weight subspace (something no general algorithm decides), it takes an
//! [`OrbitOracle`]; concrete exact oracles come with the worked fixtures in
//! [`crate::borel`] and [`crate::quiver`].

use crate::error::{Error, Result};
use crate::linalg::{QMatrix, QVector};
use crate::rational::Rational;
use crate::rng::SplitMix64;

/// Named weight subspaces whose unipotent orbits a membership oracle can
/// decide: the minimal weight space, the non-positive weight sum, and the
/// non-negative weight sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrbitSet {
    MinWeightSpace,
    NonPositiveWeights,
    NonNegativeWeights,
}

/// Exact decision procedure for membership in the unipotent orbit `U . W` of
/// a named subspace `W`. Implementations must be pure: the same point always
/// yields the same answer. `None` means the oracle cannot decide that set.
pub trait OrbitOracle {
    fn contains(&self, set: OrbitSet, v: &QVector) -> Option<bool>;
}

/// Verdict status of a semistability membership test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Semistable,
    Unstable,
    /// The test needed a unipotent-orbit membership oracle and none was
    /// supplied (or it declined the set).
    NeedsOracle,
}

/// Structured verdict: a status plus a short machine-checkable reason.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemistableVerdict {
    pub status: Status,
    pub reason: String,
    pub witness: Option<String>,
}

impl SemistableVerdict {
    fn semistable(reason: &str) -> Self {
        SemistableVerdict {
            status: Status::Semistable,
            reason: reason.into(),
            witness: None,
        }
    }

    fn unstable(reason: &str) -> Self {
        SemistableVerdict {
            status: Status::Unstable,
            reason: reason.into(),
            witness: None,
        }
    }

    fn needs_oracle(reason: &str) -> Self {
        SemistableVerdict {
            status: Status::NeedsOracle,
            reason: reason.into(),
            witness: None,
        }
    }

    pub fn is_semistable(&self) -> bool {
        self.status == Status::Semistable
    }
}

/// A graded representation: the multiplicative group acts diagonally with
/// integer weight `gm_weights[i]` on coordinate `i`, and `lie_u` holds the
/// action matrices of a basis of the Lie algebra of the unipotent group.
/// Each Lie matrix must strictly raise the weight (entry `(i, j)` vanishes
/// unless `gm_weights[i] > gm_weights[j]`), which forces nilpotency and
/// makes the non-negative weight sum and the minimal weight space invariant
/// under the unipotent group.
#[derive(Debug, Clone)]
pub struct GradedRep {
    gm_weights: Vec<i64>,
    lie_u: Vec<QMatrix>,
}

impl GradedRep {
    pub fn new(gm_weights: Vec<i64>, lie_u: Vec<QMatrix>) -> Result<Self> {
        if gm_weights.is_empty() {
            return Err(Error::Invalid(
                "graded representation of dimension zero".into(),
            ));
        }
        let n = gm_weights.len();
        for (k, mat) in lie_u.iter().enumerate() {
            if mat.rows() != n || mat.cols() != n {
                return Err(Error::Dimension(format!(
                    "Lie matrix {k} is {}x{}, expected {n}x{n}",
                    mat.rows(),
                    mat.cols()
                )));
            }
            for i in 0..n {
                for j in 0..n {
                    if !mat[(i, j)].is_zero() && gm_weights[i] <= gm_weights[j] {
                        return Err(Error::Invalid(format!(
                            "Lie matrix {k} does not strictly raise the grading at entry ({i}, {j})"
                        )));
                    }
                }
            }
            if !mat.is_nilpotent()? {
                return Err(Error::Invalid(format!("Lie matrix {k} is not nilpotent")));
            }
        }
        Ok(GradedRep { gm_weights, lie_u })
    }

    pub fn dim(&self) -> usize {
        self.gm_weights.len()
    }

    pub fn gm_weights(&self) -> &[i64] {
        &self.gm_weights
    }

    pub fn lie_u(&self) -> &[QMatrix] {
        &self.lie_u
    }

    pub fn omega_min(&self) -> i64 {
        *self.gm_weights.iter().min().expect("non-empty")
    }

    /// Second-smallest distinct weight, if any.
    pub fn omega_next(&self) -> Option<i64> {
        let min = self.omega_min();
        self.gm_weights.iter().filter(|&&w| w > min).min().copied()
    }

    /// Coordinates of the minimal weight space.
    pub fn vmin_indices(&self) -> Vec<usize> {
        let min = self.omega_min();
        (0..self.dim())
            .filter(|&i| self.gm_weights[i] == min)
            .collect()
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

    /// Projection onto the minimal weight space, in its own coordinates.
    pub fn p_min(&self, v: &QVector) -> Result<QVector> {
        self.check_point(v)?;
        Ok(QVector::new(
            self.vmin_indices().iter().map(|&i| v[i].clone()).collect(),
        ))
    }

    /// Embed a minimal-weight-space point back into the full space.
    pub fn embed_vmin(&self, w: &QVector) -> Result<QVector> {
        let idx = self.vmin_indices();
        if w.len() != idx.len() {
            return Err(Error::Dimension(format!(
                "minimal-space point of length {}, expected {}",
                w.len(),
                idx.len()
            )));
        }
        let mut out = QVector::zeros(self.dim());
        for (slot, &i) in idx.iter().enumerate() {
            out[i] = w[slot].clone();
        }
        Ok(out)
    }

    /// Whether the projection to the minimal weight space is non-zero.
    pub fn in_vmin0(&self, v: &QVector) -> Result<bool> {
        Ok(!self.p_min(v)?.is_zero())
    }

    /// Whether every coordinate of negative weight vanishes.
    pub fn in_v_geq0(&self, v: &QVector) -> Result<bool> {
        self.check_point(v)?;
        Ok((0..self.dim()).all(|i| self.gm_weights[i] >= 0 || v[i].is_zero()))
    }
}

/// Summary of the grading: minimal weight, next distinct weight and the
/// coordinate set of the minimal weight space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradingSummary {
    pub omega_min: i64,
    pub omega_next: Option<i64>,
    pub vmin_indices: Vec<usize>,
}

pub fn grading_summary(rep: &GradedRep) -> GradingSummary {
    GradingSummary {
        omega_min: rep.omega_min(),
        omega_next: rep.omega_next(),
        vmin_indices: rep.vmin_indices(),
    }
}

/// Pointwise unipotent-stabilizer check: the infinitesimal stabilizer of `v`
/// is trivial iff the matrix with columns `N_j v` has full column rank. In
/// characteristic zero a unipotent group has trivial stabilizer exactly when
/// its Lie algebra does.
pub fn check_u_cond_at(rep: &GradedRep, v: &QVector) -> Result<bool> {
    rep.check_point(v)?;
    let k = rep.lie_u.len();
    if k == 0 {
        return Ok(true);
    }
    let mut cols = QMatrix::zeros(rep.dim(), k);
    for (j, mat) in rep.lie_u.iter().enumerate() {
        let image = mat.mul_vec(v)?;
        for i in 0..rep.dim() {
            cols[(i, j)] = image[i].clone();
        }
    }
    Ok(cols.rank() == k)
}

/// Outcome of sampling the stabilizer condition over the minimal weight
/// space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SampledCheck {
    HoldsOnSample,
    Counterexample(QVector),
}

/// Evaluate [`check_u_cond_at`] on `trials` pseudorandom non-zero points of
/// the minimal weight space plus all of its coordinate vectors; returns the
/// first counterexample found, as a full-space point.
pub fn check_u_cond_sampled(rep: &GradedRep, trials: usize, seed: u64) -> Result<SampledCheck> {
    if trials == 0 {
        return Err(Error::Invalid(
            "sampled check needs at least one trial".into(),
        ));
    }
    let dim_min = rep.vmin_indices().len();
    for slot in 0..dim_min {
        let mut w = QVector::zeros(dim_min);
        w[slot] = Rational::one();
        let v = rep.embed_vmin(&w)?;
        if !check_u_cond_at(rep, &v)? {
            return Ok(SampledCheck::Counterexample(v));
        }
    }
    let mut rng = SplitMix64::new(seed);
    for _ in 0..trials {
        let mut w = QVector::zeros(dim_min);
        while w.is_zero() {
            for slot in 0..dim_min {
                w[slot] = rng.next_rational(3, 3);
            }
        }
        let v = rep.embed_vmin(&w)?;
        if !check_u_cond_at(rep, &v)? {
            return Ok(SampledCheck::Counterexample(v));
        }
    }
    Ok(SampledCheck::HoldsOnSample)
}

/// Documentation-level description of the boundary of the compactified
/// quotient: how many copies of the projectivized quotient are glued at
/// infinity. Quotients are never constructed here; each boundary piece is
/// the quotient of the projective semistable locus of the same graded data,
/// whose membership tests live in this module and in [`crate::torus`].
///
/// One piece for negative minimal weight (the classes at infinity), two for
/// zero (classes at infinity and classes over the blown-up origin), and one
/// for positive (classes over the blown-up origin only).
pub fn boundary_component_count(rep: &GradedRep) -> usize {
    match rep.omega_min().cmp(&0) {
        std::cmp::Ordering::Less => 1,
        std::cmp::Ordering::Equal => 2,
        std::cmp::Ordering::Greater => 1,
    }
}

/// Membership in the graded-unipotent semistable locus: the non-vanishing
/// locus of the minimal-space projection when the minimal weight is
/// non-zero, with the unipotent orbit of the minimal weight space removed
/// when the minimal weight is zero.
pub fn uhat_semistable(
    rep: &GradedRep,
    v: &QVector,
    oracle: Option<&dyn OrbitOracle>,
) -> Result<SemistableVerdict> {
    rep.check_point(v)?;
    let in_vmin0 = rep.in_vmin0(v)?;
    if rep.omega_min() != 0 {
        return Ok(if in_vmin0 {
            SemistableVerdict::semistable("minimal-space projection is non-zero")
        } else {
            SemistableVerdict::unstable("minimal-space projection vanishes")
        });
    }
    if !in_vmin0 {
        return Ok(SemistableVerdict::unstable(
            "minimal-space projection vanishes",
        ));
    }
    match oracle.and_then(|o| o.contains(OrbitSet::MinWeightSpace, v)) {
        Some(true) => Ok(SemistableVerdict::unstable(
            "lies in the unipotent orbit of the minimal weight space",
        )),
        Some(false) => Ok(SemistableVerdict::semistable(
            "outside the unipotent orbit of the minimal weight space",
        )),
        None => Ok(SemistableVerdict::needs_oracle(
            "zero minimal weight requires an orbit oracle for the minimal weight space",
        )),
    }
}

/// The character-twisted Hilbert-Mumford semistable locus: everything for a
/// trivial twist; the complement of the non-negative weight sum for a
/// negative twist; the complement of the unipotent orbit of the non-positive
/// weight sum for a positive twist.
pub fn hm_rho_ss_uhat(
    rep: &GradedRep,
    v: &QVector,
    rho: i64,
    oracle: Option<&dyn OrbitOracle>,
) -> Result<SemistableVerdict> {
    rep.check_point(v)?;
    match rho.cmp(&0) {
        std::cmp::Ordering::Equal => Ok(SemistableVerdict::semistable(
            "trivial twist leaves every point semistable",
        )),
        std::cmp::Ordering::Less => Ok(if rep.in_v_geq0(v)? {
            SemistableVerdict::unstable("negative twist excludes the non-negative weight sum")
        } else {
            SemistableVerdict::semistable("a negative-weight coordinate is non-zero")
        }),
        std::cmp::Ordering::Greater => {
            match oracle.and_then(|o| o.contains(OrbitSet::NonPositiveWeights, v)) {
                Some(true) => Ok(SemistableVerdict::unstable(
                    "lies in the unipotent orbit of the non-positive weight sum",
                )),
                Some(false) => Ok(SemistableVerdict::semistable(
                    "outside the unipotent orbit of the non-positive weight sum",
                )),
                None => Ok(SemistableVerdict::needs_oracle(
                    "positive twist requires an orbit oracle for the non-positive weight sum",
                )),
            }
        }
    }
}

/// Criterion for the quotienting, Hilbert-Mumford and invariant-theoretic
/// semistable loci to coincide: a negative twist, a negative minimal weight
/// and no other negative weight. A grading with a single weight has the
/// whole space as its minimal weight space and passes the last condition
/// vacuously.
pub fn equality_condition(rep: &GradedRep, rho: i64) -> bool {
    rho < 0 && rep.omega_min() < 0 && rep.omega_next().is_none_or(|w| w >= 0)
}

/// Membership in the twisted semistable locus for a graded group with a
/// residual reductive part. The caller supplies deciders for twisted
/// semistability and null-cone membership on the minimal weight space (in
/// minimal-space coordinates), whether the twist is trivial, and whether the
/// grading is external to the acting group (which drops the orbit deletion
/// in the zero-minimal-weight case).
#[allow(clippy::too_many_arguments)]
pub fn h_semistable(
    rep: &GradedRep,
    v: &QVector,
    rho_ss: &dyn Fn(&QVector) -> bool,
    nullcone: &dyn Fn(&QVector) -> bool,
    rho_trivial: bool,
    external_grading: bool,
    oracle: Option<&dyn OrbitOracle>,
) -> Result<SemistableVerdict> {
    rep.check_point(v)?;
    let pmin = rep.p_min(v)?;
    let residual_ok = if rho_trivial {
        !nullcone(&pmin)
    } else {
        rho_ss(&pmin)
    };
    if rep.omega_min() != 0 {
        // minimal weight non-zero: twisted residual semistability away from
        // the null cone, no orbit deletion
        let ok = if rho_trivial {
            residual_ok
        } else {
            residual_ok && !nullcone(&pmin)
        };
        return Ok(if ok {
            SemistableVerdict::semistable("projection is residually semistable off the null cone")
        } else {
            SemistableVerdict::unstable("projection fails residual semistability off the null cone")
        });
    }
    if !residual_ok {
        return Ok(SemistableVerdict::unstable(if rho_trivial {
            "projection lies in the residual null cone"
        } else {
            "projection is not residually semistable"
        }));
    }
    if external_grading {
        return Ok(SemistableVerdict::semistable(
            "projection is residually semistable (externally graded, no orbit deletion)",
        ));
    }
    match oracle.and_then(|o| o.contains(OrbitSet::MinWeightSpace, v)) {
        Some(true) => Ok(SemistableVerdict::unstable(
            "lies in the unipotent orbit of the minimal weight space",
        )),
        Some(false) => Ok(SemistableVerdict::semistable(
            "residually semistable and outside the minimal-space orbit",
        )),
        None => Ok(SemistableVerdict::needs_oracle(
            "zero minimal weight requires an orbit oracle for the minimal weight space",
        )),
    }
}

/// Pointwise check that semistability collapses to stability on the minimal
/// weight space, in the form required for the twisted quotient: away from
/// the null cone when the minimal weight is non-zero or the twist trivial,
/// everywhere otherwise.
pub fn check_r_cond_at(
    vmin_point: &QVector,
    rho_ss: &dyn Fn(&QVector) -> bool,
    rho_stable: &dyn Fn(&QVector) -> bool,
    nullcone: &dyn Fn(&QVector) -> bool,
    omega_min: i64,
    rho_trivial: bool,
) -> bool {
    if omega_min != 0 || rho_trivial {
        !(rho_ss(vmin_point) && !nullcone(vmin_point)) || rho_stable(vmin_point)
    } else {
        rho_ss(vmin_point) == rho_stable(vmin_point)
    }
}

/// Pointwise unipotent-stabilizer check over the set quantified by the
/// twisted-quotient condition: vacuously true outside it.
pub fn check_uss_cond_at(
    rep: &GradedRep,
    vmin_point: &QVector,
    rho_ss: &dyn Fn(&QVector) -> bool,
    nullcone: &dyn Fn(&QVector) -> bool,
    omega_min: i64,
    rho_trivial: bool,
) -> Result<bool> {
    let quantified = if omega_min != 0 || rho_trivial {
        rho_ss(vmin_point) && !nullcone(vmin_point)
    } else {
        rho_ss(vmin_point)
    };
    if !quantified {
        return Ok(true);
    }
    let v = rep.embed_vmin(vmin_point)?;
    check_u_cond_at(rep, &v)
}

#[cfg(test)]
mod tests {
    use super::*;

    // Grading with weights (-2, 0, 0, 2) and one raising matrix; this is the
    // adjoint-type fixture also used by the worked 2x2 examples.
    fn little_rep() -> GradedRep {
        let mut n = QMatrix::zeros(4, 4);
        n[(1, 0)] = Rational::one(); // weight 0 <- -2
        n[(3, 0)] = Rational::from_int(-1);
        n[(2, 0)] = Rational::from_int(2); // another weight-0 coordinate
        GradedRep::new(vec![-2, 0, 0, 2], vec![n]).unwrap()
    }

    #[test]
    fn constructor_rejects_non_raising_matrices() {
        let mut bad = QMatrix::zeros(2, 2);
        bad[(0, 1)] = Rational::one(); // weight -1 <- +1 lowers
        assert!(GradedRep::new(vec![-1, 1], vec![bad]).is_err());

        let mut diag = QMatrix::zeros(2, 2);
        diag[(0, 0)] = Rational::one();
        assert!(GradedRep::new(vec![-1, 1], vec![diag]).is_err());
    }

    #[test]
    fn grading_summary_fields() {
        let rep = little_rep();
        let s = grading_summary(&rep);
        assert_eq!(s.omega_min, -2);
        assert_eq!(s.omega_next, Some(0));
        assert_eq!(s.vmin_indices, vec![0]);

        let flat = GradedRep::new(vec![0, 0], vec![]).unwrap();
        let s = grading_summary(&flat);
        assert_eq!((s.omega_min, s.omega_next), (0, None));
        assert_eq!(s.vmin_indices, vec![0, 1]);
    }

    #[test]
    fn projection_and_embedding_round_trip() {
        let rep = little_rep();
        let v = QVector::from_ints(&[5, 1, 2, 3]);
        let p = rep.p_min(&v).unwrap();
        assert_eq!(p, QVector::from_ints(&[5]));
        let back = rep.embed_vmin(&p).unwrap();
        assert_eq!(back, QVector::from_ints(&[5, 0, 0, 0]));
        assert!(rep.in_vmin0(&v).unwrap());
        assert!(!rep.in_vmin0(&QVector::from_ints(&[0, 1, 1, 1])).unwrap());
    }

    #[test]
    fn pointwise_stabilizer_check() {
        let rep = little_rep();
        assert!(check_u_cond_at(&rep, &QVector::from_ints(&[1, 0, 0, 0])).unwrap());
        assert!(!check_u_cond_at(&rep, &QVector::from_ints(&[0, 0, 0, 0])).unwrap());
        // the sampled variant agrees and the zero-matrix Lie algebra fails
        assert_eq!(
            check_u_cond_sampled(&rep, 25, 7).unwrap(),
            SampledCheck::HoldsOnSample
        );
        let degenerate = GradedRep::new(vec![-1, 1], vec![QMatrix::zeros(2, 2)]).unwrap();
        match check_u_cond_sampled(&degenerate, 5, 0).unwrap() {
            SampledCheck::Counterexample(v) => {
                assert_eq!(v, QVector::from_ints(&[1, 0]));
            }
            other => panic!("expected a counterexample, got {other:?}"),
        }
    }

    #[test]
    fn trichotomy_with_nonzero_minimal_weight() {
        let rep = little_rep();
        let ss = uhat_semistable(&rep, &QVector::from_ints(&[3, 1, 0, 2]), None).unwrap();
        assert_eq!(ss.status, Status::Semistable);
        let us = uhat_semistable(&rep, &QVector::from_ints(&[0, 1, 0, 2]), None).unwrap();
        assert_eq!(us.status, Status::Unstable);
    }

    #[test]
    fn zero_minimal_weight_needs_oracle() {
        let rep = GradedRep::new(vec![0, 1], vec![]).unwrap();
        let v = QVector::from_ints(&[1, 1]);
        assert_eq!(
            uhat_semistable(&rep, &v, None).unwrap().status,
            Status::NeedsOracle
        );

        struct Nothing;
        impl OrbitOracle for Nothing {
            fn contains(&self, set: OrbitSet, v: &QVector) -> Option<bool> {
                // U is trivial here, so the orbit of the minimal space is itself
                match set {
                    OrbitSet::MinWeightSpace => Some(v[1].is_zero()),
                    _ => None,
                }
            }
        }
        let verdict = uhat_semistable(&rep, &v, Some(&Nothing)).unwrap();
        assert_eq!(verdict.status, Status::Semistable);
    }

    #[test]
    fn twisted_hm_locus() {
        let rep = little_rep();
        let v = QVector::from_ints(&[1, 0, 0, 0]);
        assert_eq!(
            hm_rho_ss_uhat(&rep, &v, -1, None).unwrap().status,
            Status::Semistable
        );
        let w = QVector::from_ints(&[0, 1, 1, 1]);
        assert_eq!(
            hm_rho_ss_uhat(&rep, &w, -1, None).unwrap().status,
            Status::Unstable
        );
        assert_eq!(
            hm_rho_ss_uhat(&rep, &w, 0, None).unwrap().status,
            Status::Semistable
        );
        assert_eq!(
            hm_rho_ss_uhat(&rep, &w, 1, None).unwrap().status,
            Status::NeedsOracle
        );
    }

    #[test]
    fn equality_condition_cases() {
        let rep = little_rep();
        assert!(equality_condition(&rep, -1));
        assert!(!equality_condition(&rep, 0));
        assert!(!equality_condition(&rep, 3));

        // single negative weight: the next-weight condition holds vacuously
        let single = GradedRep::new(vec![-1, -1], vec![]).unwrap();
        assert!(equality_condition(&single, -2));

        // negative second weight breaks the criterion
        let two_neg = GradedRep::new(vec![-2, -1, 0], vec![]).unwrap();
        assert!(!equality_condition(&two_neg, -1));
    }

    #[test]
    fn residual_membership_cases() {
        let rep = little_rep();
        let always = |_: &QVector| true;
        let never = |_: &QVector| false;
        // non-zero minimal weight: membership needs ss and non-null projection
        let v = QVector::from_ints(&[1, 0, 0, 0]);
        let verdict = h_semistable(&rep, &v, &always, &never, false, false, None).unwrap();
        assert_eq!(verdict.status, Status::Semistable);
        let verdict = h_semistable(&rep, &v, &always, &always, false, false, None).unwrap();
        assert_eq!(verdict.status, Status::Unstable);

        // zero minimal weight, non-trivial twist, external grading: no
        // orbit deletion
        let flat = GradedRep::new(vec![0, 1], vec![]).unwrap();
        let v = QVector::from_ints(&[1, 1]);
        let verdict = h_semistable(&flat, &v, &always, &never, false, true, None).unwrap();
        assert_eq!(verdict.status, Status::Semistable);
        let verdict = h_semistable(&flat, &v, &always, &never, false, false, None).unwrap();
        assert_eq!(verdict.status, Status::NeedsOracle);
    }

    #[test]
    fn pointwise_residual_conditions() {
        let rep = little_rep();
        let always = |_: &QVector| true;
        let never = |_: &QVector| false;
        let p = QVector::from_ints(&[1]);
        // everything stable: holds
        assert!(check_r_cond_at(&p, &always, &always, &never, -2, false));
        // strictly semistable point off the null cone: fails
        assert!(!check_r_cond_at(&p, &always, &never, &never, -2, false));
        // inside the null cone the condition is vacuous
        assert!(check_r_cond_at(&p, &always, &never, &always, -2, false));
        // zero minimal weight and non-trivial twist: set equality pointwise
        assert!(check_r_cond_at(&p, &always, &always, &never, 0, false));
        assert!(!check_r_cond_at(&p, &always, &never, &never, 0, false));

        // stabilizer check is vacuous outside the quantified set
        assert!(
            check_uss_cond_at(&rep, &QVector::from_ints(&[0]), &never, &never, -2, false).unwrap()
        );
        assert!(
            check_uss_cond_at(&rep, &QVector::from_ints(&[1]), &always, &never, -2, false).unwrap()
        );
    }

    #[test]
    fn boundary_descriptions() {
        assert_eq!(boundary_component_count(&little_rep()), 1);
        assert_eq!(
            boundary_component_count(&GradedRep::new(vec![0, 1], vec![]).unwrap()),
            2
        );
        assert_eq!(
            boundary_component_count(&GradedRep::new(vec![1, 2], vec![]).unwrap()),
            1
        );
    }

    #[test]
    fn stabilizer_check_is_scale_invariant() {
        let rep = little_rep();
        let mut rng = crate::rng::SplitMix64::new(5);
        for _ in 0..30 {
            let v = QVector::new((0..4).map(|_| rng.next_rational(3, 3)).collect());
            let c = rng.next_nonzero_rational(5, 4);
            assert_eq!(
                check_u_cond_at(&rep, &v).unwrap(),
                check_u_cond_at(&rep, &v.scale(&c)).unwrap()
            );
        }
    }

    #[test]
    fn membership_depends_only_on_the_minimal_projection() {
        // with non-zero minimal weight, perturbing higher-weight coordinates
        // cannot change the verdict
        let rep = little_rep();
        let always = |_: &QVector| true;
        let never = |_: &QVector| false;
        let mut rng = crate::rng::SplitMix64::new(6);
        for _ in 0..30 {
            let v = QVector::new((0..4).map(|_| rng.next_rational(3, 3)).collect());
            let mut perturbed = v.clone();
            for i in 1..4 {
                perturbed[i] = rng.next_rational(3, 3);
            }
            let a = h_semistable(&rep, &v, &always, &never, false, false, None).unwrap();
            let b = h_semistable(&rep, &perturbed, &always, &never, false, false, None).unwrap();
            assert_eq!(a.status, b.status);
            assert_eq!(
                uhat_semistable(&rep, &v, None).unwrap().status,
                uhat_semistable(&rep, &perturbed, None).unwrap().status
            );
        }
    }

    #[test]
    fn lie_matrices_keep_nonnegative_weights_invariant() {
        let rep = little_rep();
        // images of non-negative-weight basis vectors stay in strictly
        // higher layers than the minimal weight
        for i in 0..rep.dim() {
            if rep.gm_weights()[i] < 0 {
                continue;
            }
            let mut e = QVector::zeros(rep.dim());
            e[i] = Rational::one();
            for n in rep.lie_u() {
                let img = n.mul_vec(&e).unwrap();
                for j in 0..rep.dim() {
                    if !img[j].is_zero() {
                        assert!(rep.gm_weights()[j] > rep.gm_weights()[i]);
                    }
                }
            }
        }
    }
}
