//! Pinhole cameras, arrangements and their geometric predicates.

mod io;
mod random;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::linalg::QMatrix;
use crate::poly::{subsets, Polynomial, Rational, Var, VariableContext};

pub use io::{ArrangementFile, CameraSpec, Entry};
pub use random::{
    random_arrangement, random_finite_arrangement, random_gl3, random_gl4, random_image_change,
    random_translational, rng_from_seed,
};

/// A point of projective space, stored with its first nonzero coordinate 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ProjectivePoint {
    coords: Vec<Rational>,
}

impl ProjectivePoint {
    pub fn new(coords: Vec<Rational>) -> Result<Self> {
        let Some(first) = coords.iter().find(|c| !c.is_zero()) else {
            return Err(Error::ZeroPoint);
        };
        let inv = first.recip();
        Ok(ProjectivePoint {
            coords: coords.iter().map(|c| c * &inv).collect(),
        })
    }

    pub fn from_ints(coords: &[i64]) -> Result<Self> {
        Self::new(coords.iter().map(|&c| Rational::from_int(c)).collect())
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    /// True for a world point on the plane at infinity.
    pub fn is_at_infinity(&self) -> bool {
        self.coords.last().is_some_and(|c| c.is_zero())
    }
}

impl fmt::Debug for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A rank-3 `3 x 4` rational matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Camera {
    matrix: QMatrix,
}

impl Camera {
    pub fn new(matrix: QMatrix) -> Result<Self> {
        if matrix.rows() != 3 || matrix.cols() != 4 {
            return Err(Error::Dimension(format!(
                "camera must be 3x4, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        let r = matrix.rank();
        if r != 3 {
            return Err(Error::RankDeficient(r));
        }
        Ok(Camera { matrix })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Result<Self> {
        Self::new(QMatrix::from_ints(rows))
    }

    /// `[I | t]`.
    pub fn translational(t: &[Rational; 3]) -> Self {
        Self::euclidean_matrix(&QMatrix::identity(3), t)
    }

    /// `[R | t]` with `R` the rotation of the quaternion `(a,b,c,d)`,
    /// normalized by its squared norm so entries stay rational.
    pub fn euclidean(quat: &[Rational; 4], t: &[Rational; 3]) -> Result<Self> {
        Ok(Self::euclidean_matrix(&rotation(quat)?, t))
    }

    fn euclidean_matrix(r: &QMatrix, t: &[Rational; 3]) -> Self {
        let m = QMatrix::from_fn(3, 4, |i, j| if j < 3 { r.get(i, j).clone() } else { t[i].clone() });
        Camera { matrix: m }
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.matrix
    }

    pub fn focus(&self) -> ProjectivePoint {
        let k = self.matrix.kernel();
        ProjectivePoint::new(k[0].clone()).expect("kernel vector is nonzero")
    }

    pub fn project(&self, q: &ProjectivePoint) -> Result<ProjectivePoint> {
        if q.coords.len() != 4 {
            return Err(Error::Dimension("world points have 4 coordinates".into()));
        }
        let v = self.matrix.mul_vec(&q.coords)?;
        ProjectivePoint::new(v).map_err(|_| Error::AtFocus)
    }

    /// `A` is exactly `[I | 0]`.
    pub fn is_normalized(&self) -> bool {
        self.matrix == QMatrix::from_fn(3, 4, |i, j| if i == j { Rational::one() } else { Rational::zero() })
    }

    fn right_mul(&self, g: &QMatrix) -> Camera {
        Camera {
            matrix: &self.matrix * g,
        }
    }

    fn left_mul(&self, g: &QMatrix) -> Camera {
        Camera {
            matrix: g * &self.matrix,
        }
    }
}

impl fmt::Debug for Camera {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Camera{:?}", self.matrix)
    }
}

/// Rotation matrix of a nonzero rational quaternion.
pub fn rotation(quat: &[Rational; 4]) -> Result<QMatrix> {
    let [a, b, c, d] = quat;
    let n2 = &(&(a * a) + &(b * b)) + &(&(c * c) + &(d * d));
    if n2.is_zero() {
        return Err(Error::ZeroPoint);
    }
    let two = Rational::from_int(2);
    let sq = |x: &Rational| x * x;
    let tw = |x: Rational| &two * &x;
    let rows = vec![
        vec![
            &(&sq(a) + &sq(b)) - &(&sq(c) + &sq(d)),
            tw(&(b * c) - &(a * d)),
            tw(&(b * d) + &(a * c)),
        ],
        vec![
            tw(&(b * c) + &(a * d)),
            &(&sq(a) - &sq(b)) + &(&sq(c) - &sq(d)),
            tw(&(c * d) - &(a * b)),
        ],
        vec![
            tw(&(b * d) - &(a * c)),
            tw(&(c * d) + &(a * b)),
            &(&sq(a) - &sq(b)) - &(&sq(c) - &sq(d)),
        ],
    ];
    Ok(QMatrix::from_rows(rows)?.scale(&n2.recip()))
}

/// Whether coplanarity is meaningful (`n >= 4`) or holds vacuously.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Coplanarity {
    pub coplanar: bool,
    pub vacuous: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Predicates {
    pub n_cameras: usize,
    pub distinct_foci: bool,
    pub coplanar: bool,
    pub coplanar_vacuous: bool,
    pub collinear: bool,
    pub minor_generic: bool,
    pub first_normalized: bool,
}

/// An ordered list of at least two cameras.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Arrangement {
    cameras: Vec<Camera>,
}

impl Arrangement {
    pub fn new(cameras: Vec<Camera>) -> Result<Self> {
        if cameras.len() < 2 {
            return Err(Error::InvalidIndex(format!(
                "an arrangement needs at least 2 cameras, got {}",
                cameras.len()
            )));
        }
        Ok(Arrangement { cameras })
    }

    /// Translational cameras `[I | t_i]`.
    pub fn translational(ts: &[[Rational; 3]]) -> Result<Self> {
        Self::new(ts.iter().map(Camera::translational).collect())
    }

    pub fn translational_ints(ts: &[[i64; 3]]) -> Result<Self> {
        let ts: Vec<[Rational; 3]> = ts.iter().map(|t| t.map(Rational::from_int)).collect();
        Self::translational(&ts)
    }

    pub fn euclidean(specs: &[([Rational; 4], [Rational; 3])]) -> Result<Self> {
        Self::new(specs.iter().map(|(q, t)| Camera::euclidean(q, t)).collect::<Result<_>>()?)
    }

    pub fn raw(matrices: Vec<QMatrix>) -> Result<Self> {
        Self::new(matrices.into_iter().map(Camera::new).collect::<Result<_>>()?)
    }

    pub fn n(&self) -> usize {
        self.cameras.len()
    }

    pub fn cameras(&self) -> &[Camera] {
        &self.cameras
    }

    pub fn camera(&self, i: usize) -> &Camera {
        &self.cameras[i]
    }

    /// A fresh polynomial ring for this arrangement.
    pub fn context(&self) -> Result<Arc<VariableContext>> {
        VariableContext::new(self.n())
    }

    pub fn foci(&self) -> Vec<ProjectivePoint> {
        self.cameras.iter().map(Camera::focus).collect()
    }

    /// First pair of cameras sharing a focus, if any.
    pub fn coincident_pair(&self) -> Option<(usize, usize)> {
        let f = self.foci();
        for i in 0..f.len() {
            for j in i + 1..f.len() {
                if f[i] == f[j] {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn distinct_foci(&self) -> bool {
        self.coincident_pair().is_none()
    }

    fn foci_rank(&self) -> usize {
        let rows: Vec<Vec<Rational>> = self.foci().into_iter().map(|p| p.coords).collect();
        QMatrix::from_rows(rows).expect("rectangular").rank()
    }

    pub fn coplanarity(&self) -> Coplanarity {
        Coplanarity {
            coplanar: self.foci_rank() <= 3,
            vacuous: self.n() < 4,
        }
    }

    pub fn coplanar(&self) -> bool {
        self.coplanarity().coplanar
    }

    pub fn collinear(&self) -> bool {
        self.foci_rank() <= 2
    }

    /// A plane `(a,b,c,d)` containing every focus, when one exists.
    pub fn focal_plane(&self) -> Option<Vec<Rational>> {
        let rows: Vec<Vec<Rational>> = self.foci().into_iter().map(|p| p.coords).collect();
        QMatrix::from_rows(rows).expect("rectangular").kernel().into_iter().next()
    }

    /// The `3n x 4` matrix of all camera rows.
    pub fn stacked(&self) -> QMatrix {
        QMatrix::vstack(&self.cameras.iter().map(|c| c.matrix.clone()).collect::<Vec<_>>())
            .expect("all cameras are 3x4")
    }

    pub fn minor_generic(&self) -> bool {
        let s = self.stacked();
        subsets(s.rows(), 4)
            .iter()
            .all(|r| !s.select(r, &[0, 1, 2, 3]).det().expect("square").is_zero())
    }

    /// `A_1 = [I | 0]`.
    pub fn first_normalized(&self) -> bool {
        self.cameras[0].is_normalized()
    }

    pub fn predicates(&self) -> Predicates {
        let cop = self.coplanarity();
        Predicates {
            n_cameras: self.n(),
            distinct_foci: self.distinct_foci(),
            coplanar: cop.coplanar,
            coplanar_vacuous: cop.vacuous,
            collinear: self.collinear(),
            minor_generic: self.minor_generic(),
            first_normalized: self.first_normalized(),
        }
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.n() {
            return Err(Error::InvalidIndex(format!("camera {} of {}", i + 1, self.n())));
        }
        Ok(())
    }

    /// Image of the focus of camera `i` in camera `j` (0-based).
    pub fn epipole(&self, i: usize, j: usize) -> Result<ProjectivePoint> {
        self.check_index(i)?;
        self.check_index(j)?;
        if i == j {
            return Err(Error::InvalidIndex("an epipole needs two different cameras".into()));
        }
        self.cameras[j]
            .project(&self.cameras[i].focus())
            .map_err(|_| Error::CoincidentFoci(i.min(j), i.max(j)))
    }

    /// Projects one world point through every camera.
    pub fn project(&self, q: &ProjectivePoint) -> Result<Vec<ProjectivePoint>> {
        self.cameras.iter().map(|c| c.project(q)).collect()
    }

    /// Cameras `A_i G`.
    pub fn world_transform(&self, g: &QMatrix) -> Result<Arrangement> {
        if g.rows() != 4 || g.cols() != 4 {
            return Err(Error::Dimension("world transform must be 4x4".into()));
        }
        if g.det()?.is_zero() {
            return Err(Error::Singular);
        }
        Ok(Arrangement {
            cameras: self.cameras.iter().map(|c| c.right_mul(g)).collect(),
        })
    }

    /// Cameras `G_i A_i` together with the substitution `p_i -> G_i^{-1} p_i`.
    pub fn image_transform(&self, gs: &[QMatrix]) -> Result<(Arrangement, ImageChange)> {
        if gs.len() != self.n() {
            return Err(Error::Dimension(format!("{} image transforms for {} cameras", gs.len(), self.n())));
        }
        let mut inverses = Vec::with_capacity(gs.len());
        for g in gs {
            if g.rows() != 3 || g.cols() != 3 {
                return Err(Error::Dimension("image transforms must be 3x3".into()));
            }
            inverses.push(g.inverse()?);
        }
        let arr = Arrangement {
            cameras: self.cameras.iter().zip(gs).map(|(c, g)| c.left_mul(g)).collect(),
        };
        Ok((arr, ImageChange { inverses }))
    }

    /// Stable 64-bit FNV-1a digest of the camera entries.
    pub fn fingerprint(&self) -> String {
        let mut h: u64 = 0xcbf29ce484222325;
        for c in &self.cameras {
            for r in 0..3 {
                for v in c.matrix.row(r) {
                    for b in v.to_string().bytes().chain([b',']) {
                        h ^= b as u64;
                        h = h.wrapping_mul(0x100000001b3);
                    }
                }
            }
            h ^= b';' as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
        format!("{h:016x}")
    }
}

impl fmt::Debug for Arrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.cameras).finish()
    }
}

/// The ring map `p_i -> G_i^{-1} p_i` induced by image coordinate changes.
#[derive(Debug, Clone)]
pub struct ImageChange {
    inverses: Vec<QMatrix>,
}

impl ImageChange {
    pub fn identity(n: usize) -> Self {
        ImageChange {
            inverses: vec![QMatrix::identity(3); n],
        }
    }

    pub fn substitution(&self, ctx: &Arc<VariableContext>) -> HashMap<Var, Polynomial> {
        let mut map = HashMap::new();
        for (cam, inv) in self.inverses.iter().enumerate() {
            for r in 0..3 {
                let img = (0..3).fold(Polynomial::zero(ctx), |acc, c| {
                    &acc + &Polynomial::var(ctx, ctx.image_var(cam, c)).scale(inv.get(r, c))
                });
                map.insert(ctx.image_var(cam, r), img);
            }
        }
        map
    }

    pub fn apply(&self, f: &Polynomial) -> Result<Polynomial> {
        f.substitute(&self.substitution(f.ctx()))
    }

    pub fn apply_ideal(&self, i: &Ideal) -> Result<Ideal> {
        let map = self.substitution(i.ctx());
        let gens = i.generators().iter().map(|g| g.substitute(&map)).collect::<Result<_>>()?;
        Ideal::new(i.ctx(), gens)
    }

    /// The map for `G_i^{-1}`, undoing this one.
    pub fn inverse(&self) -> Result<Self> {
        Ok(ImageChange {
            inverses: self.inverses.iter().map(QMatrix::inverse).collect::<Result<_>>()?,
        })
    }
}
