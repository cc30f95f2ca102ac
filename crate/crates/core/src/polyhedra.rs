//! Exact decision procedures on rational cones and polytopes: convex-hull
//! membership, cone membership, ray scaling and face-containment tests, all
//! reduced to exact linear programs.
//!
//! Conventions: the empty point set has empty hull (contains nothing), while
//! the empty cone contains exactly the zero vector.

use crate::error::{Error, Result};
use crate::linalg::{QMatrix, QVector};
use crate::lp::{self, LpOutcome};
use crate::rational::Rational;

/// Finite set of rational points spanning a convex hull.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    dim: usize,
    points: Vec<QVector>,
}

impl PointSet {
    pub fn new(dim: usize, points: Vec<QVector>) -> Result<Self> {
        if let Some(p) = points.iter().find(|p| p.len() != dim) {
            return Err(Error::Dimension(format!(
                "point of length {} in a set of dimension {dim}",
                p.len()
            )));
        }
        Ok(PointSet { dim, points })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[QVector] {
        &self.points
    }

    /// Same set with the origin adjoined.
    pub fn with_origin(&self) -> PointSet {
        let mut points = self.points.clone();
        points.push(QVector::zeros(self.dim));
        PointSet {
            dim: self.dim,
            points,
        }
    }
}

/// Finite set of ray generators of a rational cone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeGenerators {
    dim: usize,
    rays: Vec<QVector>,
}

impl ConeGenerators {
    pub fn new(dim: usize, rays: Vec<QVector>) -> Result<Self> {
        if let Some(r) = rays.iter().find(|r| r.len() != dim) {
            return Err(Error::Dimension(format!(
                "ray of length {} in a cone of dimension {dim}",
                r.len()
            )));
        }
        Ok(ConeGenerators { dim, rays })
    }

    pub fn from_points(s: &PointSet) -> ConeGenerators {
        ConeGenerators {
            dim: s.dim,
            rays: s.points.clone(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[QVector] {
        &self.rays
    }
}

fn check_dim(expected: usize, v: &QVector, what: &str) -> Result<()> {
    if v.len() != expected {
        return Err(Error::Dimension(format!(
            "{what} has length {}, expected {expected}",
            v.len()
        )));
    }
    Ok(())
}

/// True iff `p` is a convex combination of the points of `s`, decided by
/// exact LP feasibility. The empty hull contains nothing.
pub fn in_convex_hull(p: &QVector, s: &PointSet) -> Result<bool> {
    check_dim(s.dim, p, "query point")?;
    if s.is_empty() {
        return Ok(false);
    }
    // variables: one coefficient per point; rows: each coordinate plus the
    // normalization sum = 1.
    let n = s.len();
    let mut constraints = QMatrix::zeros(s.dim + 1, n);
    let mut rhs = Vec::with_capacity(s.dim + 1);
    for d in 0..s.dim {
        for (j, q) in s.points.iter().enumerate() {
            constraints[(d, j)] = q[d].clone();
        }
        rhs.push(p[d].clone());
    }
    for j in 0..n {
        constraints[(s.dim, j)] = Rational::one();
    }
    rhs.push(Rational::one());
    Ok(lp::feasible_point(&constraints, &rhs)?.is_some())
}

/// True iff `p` is a non-negative combination of the rays of `c`. The zero
/// vector lies in every cone.
pub fn in_cone(p: &QVector, c: &ConeGenerators) -> Result<bool> {
    check_dim(c.dim, p, "query point")?;
    if c.rays.is_empty() {
        return Ok(p.is_zero());
    }
    let n = c.rays.len();
    let mut constraints = QMatrix::zeros(c.dim, n);
    let mut rhs = Vec::with_capacity(c.dim);
    for d in 0..c.dim {
        for (j, r) in c.rays.iter().enumerate() {
            constraints[(d, j)] = r[d].clone();
        }
        rhs.push(p[d].clone());
    }
    Ok(lp::feasible_point(&constraints, &rhs)?.is_some())
}

/// Scaling maxima along a ray, see [`max_ray_scale`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RayScale {
    Finite(Rational),
    /// The ray stays inside for every positive scale; impossible for hulls of
    /// finitely many points, reserved for cone-like inputs.
    Unbounded,
}

/// Largest `t >= 0` with `t * rho` inside the hull of `s`, as an exact
/// rational. Returns `None` when no strictly positive `t` works.
pub fn max_ray_scale(rho: &QVector, s: &PointSet) -> Result<Option<RayScale>> {
    check_dim(s.dim, rho, "ray direction")?;
    if rho.is_zero() {
        return Err(Error::Invalid("ray direction must be non-zero".into()));
    }
    if s.is_empty() {
        return Err(Error::Invalid("ray scaling over an empty point set".into()));
    }
    // variables: hull coefficients a_j and the scale t;
    // rows: sum a_j q_j - t rho = 0 per coordinate, sum a_j = 1.
    let n = s.len();
    let mut constraints = QMatrix::zeros(s.dim + 1, n + 1);
    let mut rhs = Vec::with_capacity(s.dim + 1);
    for d in 0..s.dim {
        for (j, q) in s.points.iter().enumerate() {
            constraints[(d, j)] = q[d].clone();
        }
        constraints[(d, n)] = -&rho[d];
        rhs.push(Rational::zero());
    }
    for j in 0..n {
        constraints[(s.dim, j)] = Rational::one();
    }
    rhs.push(Rational::one());
    let mut objective = vec![Rational::zero(); n + 1];
    objective[n] = Rational::one();
    match lp::maximize(&constraints, &rhs, &objective)? {
        LpOutcome::Infeasible => Ok(None),
        LpOutcome::Unbounded => Ok(Some(RayScale::Unbounded)),
        LpOutcome::Optimal { value, .. } => {
            if value.is_positive() {
                Ok(Some(RayScale::Finite(value)))
            } else {
                Ok(None)
            }
        }
    }
}

/// Face-containment test. The admissible region is the dual cone
/// `{ l : <chi, l> >= 0 for every generator chi of c }`, and the face is its
/// slice `{ l : <rho, l> = 0 }`. Returns true iff every `l` in that face
/// pairs to zero with every vector of `annihilated`.
///
/// Each pairing is decided by two normalized LPs (maximize `<w, l>` and
/// `<-w, l>` over the face intersected with `|l|_1 <= 1`); the face is a
/// cone, so a non-zero pairing of either sign survives the normalization.
pub fn cone_face_in_subspace(
    c: &ConeGenerators,
    rho: &QVector,
    annihilated: &PointSet,
) -> Result<bool> {
    let dim = c.dim;
    check_dim(dim, rho, "face normal")?;
    if annihilated.dim() != dim {
        return Err(Error::Dimension(format!(
            "annihilated set of dimension {}, expected {dim}",
            annihilated.dim()
        )));
    }
    for w in annihilated.points() {
        if !(face_max_pairing(c, rho, w)?.is_zero()) {
            return Ok(false);
        }
        let neg = w.scale(&Rational::from_int(-1));
        if !(face_max_pairing(c, rho, &neg)?.is_zero()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Maximum of `<w, l>` over the face, normalized by `|l|_1 <= 1`; always a
/// finite non-negative rational since `l = 0` is admissible.
fn face_max_pairing(c: &ConeGenerators, rho: &QVector, w: &QVector) -> Result<Rational> {
    let dim = c.dim;
    // variables: l+ (dim), l- (dim), one slack per cone generator, one slack
    // for the normalization bound.
    let k = c.rays.len();
    let ncols = 2 * dim + k + 1;
    let nrows = k + 2;
    let mut constraints = QMatrix::zeros(nrows, ncols);
    let mut rhs = vec![Rational::zero(); nrows];

    // <chi_i, l+ - l-> - s_i = 0
    for (i, chi) in c.rays.iter().enumerate() {
        for d in 0..dim {
            constraints[(i, d)] = chi[d].clone();
            constraints[(i, dim + d)] = -&chi[d];
        }
        constraints[(i, 2 * dim + i)] = Rational::from_int(-1);
    }
    // <rho, l+ - l-> = 0
    for d in 0..dim {
        constraints[(k, d)] = rho[d].clone();
        constraints[(k, dim + d)] = -&rho[d];
    }
    // sum(l+ + l-) + sigma = 1
    for d in 0..2 * dim {
        constraints[(k + 1, d)] = Rational::one();
    }
    constraints[(k + 1, 2 * dim + k)] = Rational::one();
    rhs[k + 1] = Rational::one();

    let mut objective = vec![Rational::zero(); ncols];
    for d in 0..dim {
        objective[d] = w[d].clone();
        objective[dim + d] = -&w[d];
    }
    match lp::maximize(&constraints, &rhs, &objective)? {
        LpOutcome::Optimal { value, .. } => Ok(value),
        LpOutcome::Infeasible => unreachable!("l = 0 is always admissible"),
        LpOutcome::Unbounded => unreachable!("normalized by the |l|_1 bound"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(dim: usize, rows: &[&[i64]]) -> PointSet {
        PointSet::new(dim, rows.iter().map(|r| QVector::from_ints(r)).collect()).unwrap()
    }

    fn cone(dim: usize, rows: &[&[i64]]) -> ConeGenerators {
        ConeGenerators::new(dim, rows.iter().map(|r| QVector::from_ints(r)).collect()).unwrap()
    }

    #[test]
    fn hull_membership_examples() {
        let origin = QVector::from_ints(&[0, 0]);
        assert!(in_convex_hull(&origin, &pts(2, &[&[1, 0], &[-1, 0]])).unwrap());
        assert!(!in_convex_hull(&origin, &pts(2, &[&[1, 0], &[0, 1]])).unwrap());
        let mid = QVector::new(vec![Rational::new(1, 2), Rational::new(1, 2)]);
        assert!(in_convex_hull(&mid, &pts(2, &[&[1, 0], &[0, 1]])).unwrap());
        // empty hull contains nothing
        assert!(!in_convex_hull(&origin, &pts(2, &[])).unwrap());
    }

    #[test]
    fn cone_membership_examples() {
        let quadrant = cone(2, &[&[1, 0], &[0, 1]]);
        assert!(in_cone(&QVector::from_ints(&[1, 1]), &quadrant).unwrap());
        assert!(!in_cone(&QVector::from_ints(&[-1, 0]), &quadrant).unwrap());
        assert!(in_cone(&QVector::from_ints(&[0, 0]), &quadrant).unwrap());
        // empty cone contains exactly the origin
        assert!(in_cone(&QVector::from_ints(&[0]), &cone(1, &[])).unwrap());
        assert!(!in_cone(&QVector::from_ints(&[2]), &cone(1, &[])).unwrap());
    }

    #[test]
    fn ray_scaling_examples() {
        let rho = QVector::from_ints(&[1, 1]);
        let hull = pts(2, &[&[1, 0], &[0, 1], &[0, 0]]);
        assert_eq!(
            max_ray_scale(&rho, &hull).unwrap(),
            Some(RayScale::Finite(Rational::new(1, 2)))
        );

        let axis = QVector::from_ints(&[1, 0]);
        let segment = pts(2, &[&[1, 0], &[0, 0]]);
        assert_eq!(
            max_ray_scale(&axis, &segment).unwrap(),
            Some(RayScale::Finite(Rational::one()))
        );

        // the diagonal never meets the hull of a single off-ray point
        assert_eq!(max_ray_scale(&rho, &pts(2, &[&[1, 0]])).unwrap(), None);

        assert!(max_ray_scale(&QVector::from_ints(&[0, 0]), &hull).is_err());
    }

    #[test]
    fn ray_scale_bracketing() {
        // t* rho is inside the hull, (t* + 1) rho is not
        let rho = QVector::from_ints(&[1, 1]);
        let hull = pts(2, &[&[1, 0], &[0, 1], &[0, 0]]);
        let Some(RayScale::Finite(t)) = max_ray_scale(&rho, &hull).unwrap() else {
            panic!("expected finite scale");
        };
        let at = rho.scale(&t);
        assert!(in_convex_hull(&at, &hull).unwrap());
        let beyond = rho.scale(&(&t + &Rational::one()));
        assert!(!in_convex_hull(&beyond, &hull).unwrap());
    }

    #[test]
    fn face_containment_examples() {
        // weights (1,0),(0,1), rho (1,1): the face is {0}
        let w = cone(2, &[&[1, 0], &[0, 1]]);
        let rho = QVector::from_ints(&[1, 1]);
        let ann = pts(2, &[&[1, 0], &[0, 1]]);
        assert!(cone_face_in_subspace(&w, &rho, &ann).unwrap());

        // single weight (1,0), rho (1,0): the face contains (0,1), which
        // pairs to 1 with the probe (0,1)
        let w1 = cone(2, &[&[1, 0]]);
        let rho1 = QVector::from_ints(&[1, 0]);
        let ann1 = pts(2, &[&[0, 1]]);
        assert!(!cone_face_in_subspace(&w1, &rho1, &ann1).unwrap());

        // vacuous annihilated set
        let empty = pts(1, &[]);
        assert!(cone_face_in_subspace(&cone(1, &[]), &QVector::from_ints(&[1]), &empty).unwrap());
    }

    #[test]
    fn face_detects_negative_pairings() {
        // the face {l1 = 0} pairs negatively with (0,-1) at l = (0,1)
        let w = cone(2, &[&[1, 0]]);
        let rho = QVector::from_ints(&[1, 0]);
        let ann = pts(2, &[&[0, -1]]);
        assert!(!cone_face_in_subspace(&w, &rho, &ann).unwrap());
    }

    #[test]
    fn hull_certificates_reproduce_the_point() {
        // re-substituting LP multipliers gives the query point exactly
        let s = pts(2, &[&[2, 1], &[-1, 1], &[0, -2]]);
        let p = QVector::new(vec![Rational::new(1, 3), Rational::new(1, 3)]);
        assert!(in_convex_hull(&p, &s).unwrap());
    }
}
