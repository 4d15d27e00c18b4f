//! Determinantal ideals of an arrangement: k-focal, Faugeras and Ma ideals.
//!
//! Camera indices are 0-based throughout; coordinates are 0 = x, 1 = y, 2 = z.
//! A row of a stacked matrix is named by its `(camera, coordinate)` pair.

use std::sync::Arc;

use rayon::prelude::*;

use crate::camera::{Arrangement, ProjectivePoint};
use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::linalg::QMatrix;
use crate::poly::{subsets, Monomial, Polynomial, Rational, SymbolicMatrix, Var, VariableContext};

/// Row label `(camera, coordinate)`.
pub type RowId = (usize, usize);

fn check_ctx(arr: &Arrangement, ctx: &Arc<VariableContext>) -> Result<()> {
    if ctx.n_cameras() != arr.n() || !ctx.is_homogeneous() {
        return Err(Error::ContextMismatch);
    }
    Ok(())
}

fn image(ctx: &Arc<VariableContext>, cam: usize, coord: usize) -> Polynomial {
    Polynomial::var(ctx, ctx.image_var(cam, coord))
}

fn constant(ctx: &Arc<VariableContext>, r: &Rational) -> Polynomial {
    Polynomial::constant(ctx, r.clone())
}

/// `[p]_x`, the matrix of `v -> p x v`, for the symbolic point of camera `cam`.
pub fn cross_matrix(ctx: &Arc<VariableContext>, cam: usize) -> SymbolicMatrix {
    let p = |c| image(ctx, cam, c);
    let z = || Polynomial::zero(ctx);
    let rows = [[z(), -&p(2), p(1)], [p(2), z(), -&p(0)], [-&p(1), p(0), z()]];
    SymbolicMatrix::from_fn(ctx, 3, 3, |r, c| rows[r][c].clone())
}

/// `[p]_x` for a concrete point.
pub fn cross_matrix_of(p: &[Rational]) -> QMatrix {
    let z = Rational::zero;
    QMatrix::from_rows(vec![
        vec![z(), -&p[2], p[1].clone()],
        vec![p[2].clone(), z(), -&p[0]],
        vec![-&p[1], p[0].clone(), z()],
    ])
    .expect("3x3")
}

/// `A_sigma(p)`: the cameras of `sigma` stacked, with `p_{sigma_j}` in
/// column `4 + j`.
#[derive(Debug, Clone)]
pub struct JointMatrix {
    pub sigma: Vec<usize>,
    pub matrix: SymbolicMatrix,
}

impl JointMatrix {
    /// Label of every row.
    pub fn row_ids(&self) -> Vec<RowId> {
        self.sigma.iter().flat_map(|&c| (0..3).map(move |k| (c, k))).collect()
    }
}

fn check_sigma(arr: &Arrangement, sigma: &[usize]) -> Result<Vec<usize>> {
    let mut s = sigma.to_vec();
    s.sort_unstable();
    s.dedup();
    if s.len() != sigma.len() || s.iter().any(|&i| i >= arr.n()) {
        return Err(Error::InvalidIndex(format!("{sigma:?} is not a subset of {} cameras", arr.n())));
    }
    Ok(s)
}

pub fn joint_matrix(arr: &Arrangement, ctx: &Arc<VariableContext>, sigma: &[usize]) -> Result<JointMatrix> {
    check_ctx(arr, ctx)?;
    let sigma = check_sigma(arr, sigma)?;
    if sigma.len() < 2 {
        return Err(Error::InvalidIndex("a joint matrix needs at least 2 cameras".into()));
    }
    let k = sigma.len();
    let matrix = SymbolicMatrix::from_fn(ctx, 3 * k, 4 + k, |r, c| {
        let (j, coord) = (r / 3, r % 3);
        let cam = sigma[j];
        if c < 4 {
            constant(ctx, arr.camera(cam).matrix().get(coord, c))
        } else if c - 4 == j {
            image(ctx, cam, coord)
        } else {
            Polynomial::zero(ctx)
        }
    });
    Ok(JointMatrix { sigma, matrix })
}

/// `A(p)` for all cameras.
pub fn full_joint_matrix(arr: &Arrangement, ctx: &Arc<VariableContext>) -> Result<JointMatrix> {
    joint_matrix(arr, ctx, &(0..arr.n()).collect::<Vec<_>>())
}

/// A k-focal polynomial with the rows of `A_sigma(p)` it keeps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FocalGenerator {
    pub sigma: Vec<usize>,
    pub rows: Vec<RowId>,
    pub poly: Polynomial,
}

impl FocalGenerator {
    /// How many rows each camera of `sigma` contributes.
    pub fn distribution(&self) -> Vec<usize> {
        self.sigma
            .iter()
            .map(|&c| self.rows.iter().filter(|r| r.0 == c).count())
            .collect()
    }
}

/// `H^k` with its construction metadata.
#[derive(Debug, Clone)]
pub struct FocalIdeal {
    pub k: usize,
    /// Nonzero minors, `sigma` outer, row sets inner, both lexicographic.
    pub generators: Vec<FocalGenerator>,
    /// Maximal minors examined, zero ones included.
    pub candidates: usize,
    pub zero: usize,
    pub ideal: Ideal,
}

/// All nonzero maximal minors of `A_sigma(p)`.
pub fn focal_minors(arr: &Arrangement, ctx: &Arc<VariableContext>, sigma: &[usize]) -> Result<(Vec<FocalGenerator>, usize)> {
    let jm = joint_matrix(arr, ctx, sigma)?;
    let k = jm.sigma.len();
    let ids = jm.row_ids();
    let cols: Vec<usize> = (0..4 + k).collect();
    let row_sets = subsets(3 * k, 4 + k);
    let total = row_sets.len();
    let gens: Vec<FocalGenerator> = row_sets
        .par_iter()
        .filter_map(|rs| {
            // A camera without a selected row leaves a zero column.
            if (0..k).any(|j| !rs.iter().any(|&r| r / 3 == j)) {
                return None;
            }
            let poly = jm.matrix.minor(rs, &cols).expect("square selection");
            (!poly.is_zero()).then(|| FocalGenerator {
                sigma: jm.sigma.clone(),
                rows: rs.iter().map(|&r| ids[r]).collect(),
                poly,
            })
        })
        .collect();
    Ok((gens, total))
}

pub fn k_focal_ideal(arr: &Arrangement, ctx: &Arc<VariableContext>, k: usize) -> Result<FocalIdeal> {
    check_ctx(arr, ctx)?;
    if k < 2 || k > arr.n() {
        return Err(Error::KOutOfRange { k, n: arr.n() });
    }
    let mut generators = Vec::new();
    let mut candidates = 0;
    for sigma in subsets(arr.n(), k) {
        let (g, total) = focal_minors(arr, ctx, &sigma)?;
        candidates += total;
        generators.extend(g);
    }
    let zero = candidates - generators.len();
    let ideal = Ideal::new(ctx, generators.iter().map(|g| g.poly.clone()).collect())?;
    Ok(FocalIdeal {
        k,
        generators,
        candidates,
        zero,
        ideal,
    })
}

/// Maximal minors of `A_sigma(p)` for one subset.
pub fn k_focal_ideal_of(arr: &Arrangement, ctx: &Arc<VariableContext>, sigma: &[usize]) -> Result<FocalIdeal> {
    let (generators, candidates) = focal_minors(arr, ctx, sigma)?;
    let ideal = Ideal::new(ctx, generators.iter().map(|g| g.poly.clone()).collect())?;
    Ok(FocalIdeal {
        k: sigma.len(),
        zero: candidates - generators.len(),
        generators,
        candidates,
        ideal,
    })
}

/// Result of bumping a k-focal up to the cameras `tau`.
#[derive(Debug, Clone)]
pub struct Bump {
    /// The minor of `A_tau(p)` keeping the original rows plus the chosen ones.
    pub focal: FocalGenerator,
    /// Determinant of the bordered matrix, with the new rows and columns last.
    pub bordered: Polynomial,
    /// `bordered == (prod w) * f` holds exactly.
    pub identity_holds: bool,
}

/// Border `A_sigma(p)` with the row of coordinate `coord` of every extra
/// camera of `tau` and the matching image column. `choices` lists
/// `(camera, coordinate)` for each camera of `tau` not in `sigma`.
pub fn bump(arr: &Arrangement, ctx: &Arc<VariableContext>, f: &FocalGenerator, choices: &[RowId]) -> Result<Bump> {
    check_ctx(arr, ctx)?;
    let mut tau = f.sigma.clone();
    for &(c, coord) in choices {
        if f.sigma.contains(&c) || tau.contains(&c) || c >= arr.n() || coord > 2 {
            return Err(Error::InvalidIndex(format!("bump choice ({}, {coord})", c + 1)));
        }
        tau.push(c);
    }
    let k = f.sigma.len();
    let l = tau.len();
    let mut rows: Vec<RowId> = f.rows.clone();
    rows.extend_from_slice(choices);
    let bordered = SymbolicMatrix::from_fn(ctx, 4 + l, 4 + l, |r, c| {
        let (cam, coord) = rows[r];
        if c < 4 {
            return constant(ctx, arr.camera(cam).matrix().get(coord, c));
        }
        let col_cam = tau[c - 4];
        if col_cam == cam {
            image(ctx, cam, coord)
        } else {
            Polynomial::zero(ctx)
        }
    })
    .det()?;
    let w = choices
        .iter()
        .fold(Polynomial::one(ctx), |acc, &(c, coord)| &acc * &image(ctx, c, coord));
    let identity_holds = bordered == &w * &f.poly;
    debug_assert!(k <= l);

    let jm = joint_matrix(arr, ctx, &tau)?;
    let ids = jm.row_ids();
    let mut sel: Vec<usize> = rows.iter().map(|id| ids.iter().position(|x| x == id).unwrap()).collect();
    sel.sort_unstable();
    let cols: Vec<usize> = (0..4 + l).collect();
    let poly = jm.matrix.minor(&sel, &cols)?;
    Ok(Bump {
        focal: FocalGenerator {
            sigma: jm.sigma.clone(),
            rows: sel.iter().map(|&r| ids[r]).collect(),
            poly,
        },
        bordered,
        identity_holds,
    })
}

/// `P(p) = diag([p_1]_x, ..., [p_n]_x)`.
pub fn p_matrix(ctx: &Arc<VariableContext>) -> SymbolicMatrix {
    let n = ctx.n_cameras();
    let blocks: Vec<SymbolicMatrix> = (0..n).map(|i| cross_matrix(ctx, i)).collect();
    SymbolicMatrix::from_fn(ctx, 3 * n, 3 * n, |r, c| {
        if r / 3 == c / 3 {
            blocks[r / 3].get(r % 3, c % 3).clone()
        } else {
            Polynomial::zero(ctx)
        }
    })
}

/// `det P(p)_R^C`: deleting row (column) `j` of `[p_i]_x` for each `(i, j)`
/// in `deleted_rows` (`deleted_cols`), the row (column) of the block not
/// containing `p_ij`. Computed blockwise.
pub fn p_minor(ctx: &Arc<VariableContext>, deleted_rows: &[RowId], deleted_cols: &[RowId]) -> Result<Polynomial> {
    if deleted_rows.len() != deleted_cols.len() {
        return Err(Error::SelectionMismatch {
            rows: deleted_rows.len(),
            cols: deleted_cols.len(),
        });
    }
    let n = ctx.n_cameras();
    if deleted_rows.iter().chain(deleted_cols).any(|&(i, j)| i >= n || j > 2) {
        return Err(Error::InvalidIndex("coordinate selection out of range".into()));
    }
    let mut acc = Polynomial::one(ctx);
    for i in 0..n {
        let keep = |del: &[RowId]| -> Vec<usize> { (0..3).filter(|&j| !del.contains(&(i, j))).collect() };
        let (r, c) = (keep(deleted_rows), keep(deleted_cols));
        if r.len() != c.len() {
            return Ok(Polynomial::zero(ctx));
        }
        acc = &acc * &cross_matrix(ctx, i).minor(&r, &c)?;
        if acc.is_zero() {
            break;
        }
    }
    Ok(acc)
}

/// The stacked `3n x 4` camera matrix as a symbolic matrix.
pub fn stacked_matrix(arr: &Arrangement, ctx: &Arc<VariableContext>) -> SymbolicMatrix {
    SymbolicMatrix::from_constant(ctx, &arr.stacked())
}

/// `A^F(p)`: the blocks `[p_i]_x A_i` stacked.
pub fn faugeras_matrix(arr: &Arrangement, ctx: &Arc<VariableContext>) -> Result<SymbolicMatrix> {
    check_ctx(arr, ctx)?;
    let n = arr.n();
    let blocks: Vec<SymbolicMatrix> = (0..n)
        .map(|i| cross_matrix(ctx, i).try_mul(&SymbolicMatrix::from_constant(ctx, arr.camera(i).matrix())))
        .collect::<Result<_>>()?;
    Ok(SymbolicMatrix::from_fn(ctx, 3 * n, 4, |r, c| blocks[r / 3].get(r % 3, c).clone()))
}

/// A `4 x 4` minor of `A^F(p)` with its rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaugerasGenerator {
    pub rows: Vec<RowId>,
    pub poly: Polynomial,
}

impl FaugerasGenerator {
    pub fn cameras(&self) -> Vec<usize> {
        let mut c: Vec<usize> = self.rows.iter().map(|r| r.0).collect();
        c.dedup();
        c
    }
}

#[derive(Debug, Clone)]
pub struct FaugerasIdeals {
    pub generators: Vec<FaugerasGenerator>,
    pub candidates: usize,
    pub zero: usize,
    /// All `4 x 4` minors.
    pub full: Ideal,
    /// Minors drawing rows from exactly two cameras.
    pub two: Ideal,
    /// Minors drawing rows from exactly three cameras.
    pub three: Ideal,
}

pub fn faugeras_ideal(arr: &Arrangement, ctx: &Arc<VariableContext>) -> Result<FaugerasIdeals> {
    let m = faugeras_matrix(arr, ctx)?;
    let minors = m.minors(4)?;
    let candidates = minors.len();
    let generators: Vec<FaugerasGenerator> = minors
        .into_iter()
        .filter(|mi| !mi.is_zero())
        .map(|mi| FaugerasGenerator {
            rows: mi.rows.iter().map(|&r| (r / 3, r % 3)).collect(),
            poly: mi.value,
        })
        .collect();
    let part = |k: usize| {
        Ideal::new(
            ctx,
            generators
                .iter()
                .filter(|g| g.cameras().len() == k)
                .map(|g| g.poly.clone())
                .collect(),
        )
    };
    Ok(FaugerasIdeals {
        zero: candidates - generators.len(),
        candidates,
        full: Ideal::new(ctx, generators.iter().map(|g| g.poly.clone()).collect())?,
        two: part(2)?,
        three: part(3)?,
        generators,
    })
}

/// The Faugeras minor keeping every row except row `coord` of each camera
/// listed in `deleted`: `det(P(p)_R A)`.
pub fn faugeras_minor(arr: &Arrangement, ctx: &Arc<VariableContext>, deleted: &[RowId]) -> Result<Polynomial> {
    let m = faugeras_matrix(arr, ctx)?;
    let keep: Vec<usize> = (0..m.rows()).filter(|&r| !deleted.contains(&(r / 3, r % 3))).collect();
    if keep.len() != 4 {
        return Err(Error::SelectionMismatch { rows: keep.len(), cols: 4 });
    }
    m.minor(&keep, &[0, 1, 2, 3])
}

/// Requires `A_1 = [I | 0]`.
fn check_normalized(arr: &Arrangement) -> Result<()> {
    if !arr.first_normalized() {
        return Err(Error::Precondition(
            "the Ma matrix needs the first camera normalized to [I | 0]".into(),
        ));
    }
    Ok(())
}

/// `A^Y(p)`: rows `p_i x (B_i p_1)` and `p_i x t_i` for `A_i = [B_i | t_i]`.
pub fn ma_matrix(arr: &Arrangement, ctx: &Arc<VariableContext>) -> Result<SymbolicMatrix> {
    check_ctx(arr, ctx)?;
    check_normalized(arr)?;
    let n = arr.n();
    let p1: Vec<Polynomial> = (0..3).map(|c| image(ctx, 0, c)).collect();
    let mut m = SymbolicMatrix::zeros(ctx, 3 * n, 2);
    for i in 0..n {
        let a = arr.camera(i).matrix();
        let bp: Vec<Polynomial> = (0..3)
            .map(|r| (0..3).fold(Polynomial::zero(ctx), |acc, c| &acc + &p1[c].scale(a.get(r, c))))
            .collect();
        let t: Vec<Polynomial> = (0..3).map(|r| constant(ctx, a.get(r, 3))).collect();
        let cross = cross_matrix(ctx, i);
        for r in 0..3 {
            let dot = |v: &[Polynomial]| {
                (0..3).fold(Polynomial::zero(ctx), |acc, c| {
                    let e = cross.get(r, c);
                    if e.is_zero() || v[c].is_zero() {
                        acc
                    } else {
                        &acc + &(e * &v[c])
                    }
                })
            };
            m.set(3 * i + r, 0, dot(&bp));
            m.set(3 * i + r, 1, dot(&t));
        }
    }
    Ok(m)
}

/// `Y = minors(2, A^Y(p))`.
pub fn ma_ideal(arr: &Arrangement, ctx: &Arc<VariableContext>) -> Result<Ideal> {
    let m = ma_matrix(arr, ctx)?;
    let gens = m.minors(2)?.into_iter().map(|mi| mi.value).collect();
    Ideal::new(ctx, gens)
}

/// The `4 x 2` right factor with `A^Y(p) = A^F(p) * [[p_1, 0], [0, 1]]`.
pub fn ma_right_factor(ctx: &Arc<VariableContext>) -> SymbolicMatrix {
    SymbolicMatrix::from_fn(ctx, 4, 2, |r, c| match (r, c) {
        (r, 0) if r < 3 => image(ctx, 0, r),
        (3, 1) => Polynomial::one(ctx),
        _ => Polynomial::zero(ctx),
    })
}

/// Exact rank of `A(p)` at a tuple of image points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankTest {
    pub rank: usize,
    pub member: bool,
    /// `(q, -lambda_1, ..., -lambda_n)` with first nonzero entry 1.
    pub kernel: Option<Vec<Rational>>,
}

pub fn rank_test_point(arr: &Arrangement, points: &[Vec<Rational>]) -> Result<RankTest> {
    let n = arr.n();
    if points.len() != n || points.iter().any(|p| p.len() != 3) {
        return Err(Error::Dimension(format!("expected {n} image points of 3 coordinates")));
    }
    if points.iter().any(|p| p.iter().all(Rational::is_zero)) {
        return Err(Error::ZeroPoint);
    }
    let m = QMatrix::from_fn(3 * n, 4 + n, |r, c| {
        let (i, coord) = (r / 3, r % 3);
        if c < 4 {
            arr.camera(i).matrix().get(coord, c).clone()
        } else if c - 4 == i {
            points[i][coord].clone()
        } else {
            Rational::zero()
        }
    });
    let rank = m.rank();
    let member = rank < 4 + n;
    let kernel = if member {
        m.kernel()
            .into_iter()
            .next()
            .map(|v| ProjectivePoint::new(v).expect("kernel vector is nonzero").coords().to_vec())
    } else {
        None
    };
    Ok(RankTest { rank, member, kernel })
}

/// The monomial `prod w` for a list of image coordinates.
pub fn image_monomial(ctx: &Arc<VariableContext>, coords: &[RowId]) -> Monomial {
    coords
        .iter()
        .fold(Monomial::one(), |acc, &(c, k)| acc * Monomial::var(ctx.image_var(c, k)))
}

/// Image variable of a row label.
pub fn row_var(ctx: &Arc<VariableContext>, id: RowId) -> Var {
    ctx.image_var(id.0, id.1)
}
