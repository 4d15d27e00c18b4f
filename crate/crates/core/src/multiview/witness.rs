//! Concrete image tuples: points off the multiview variety that the
//! bifocals miss, and limit points built from epipoles.

use crate::camera::{Arrangement, ProjectivePoint};
use crate::error::{Error, Result};
use crate::focal::rank_test_point;
use crate::ideal::Ideal;
use crate::linalg::QMatrix;
use crate::multiview::report::{Check, Expectation, VerificationReport, Witness};
use crate::poly::Rational;

/// A tuple with every `p_i` on the image of a plane through all foci that is
/// not the image of any world point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoplanarWitness {
    /// `(a, b, c, d)` with every focus on `a x + b y + c z + d w = 0`.
    pub plane: Vec<Rational>,
    pub points: Vec<Vec<Rational>>,
    /// The image in camera 3 of the world point seen at `p_1, p_2`.
    pub consistent_third: Option<Vec<Rational>>,
}

/// Small coefficient vectors, ordered by size then lexicographically.
fn coefficient_grid() -> Vec<[i64; 3]> {
    let mut v = Vec::new();
    for a in -2i64..=2 {
        for b in -2i64..=2 {
            for c in -2i64..=2 {
                if (a, b, c) != (0, 0, 0) {
                    v.push([a, b, c]);
                }
            }
        }
    }
    v.sort_by_key(|t| (t.iter().map(|x| x.abs()).sum::<i64>(), t.map(|x| -x)));
    v
}

fn combine(basis: &[Vec<Rational>], coef: &[i64; 3]) -> Vec<Rational> {
    (0..4)
        .map(|k| {
            (0..3).fold(Rational::zero(), |acc, j| &acc + &(&basis[j][k] * &Rational::from_int(coef[j])))
        })
        .collect()
}

fn same_point(a: &[Rational], b: &[Rational]) -> bool {
    match (ProjectivePoint::new(a.to_vec()), ProjectivePoint::new(b.to_vec())) {
        (Ok(p), Ok(q)) => p == q,
        _ => false,
    }
}

/// Follows the construction for coplanar foci: `p_1, p_2` on their image
/// lines away from the epipoles, `p_3` on its line but off the image of the
/// world point triangulated from `p_1, p_2`, and any `p_i` on `l_i` beyond.
pub fn witness_coplanar(arr: &Arrangement) -> Result<CoplanarWitness> {
    let n = arr.n();
    if n < 4 {
        return Err(Error::Precondition("the coplanar witness needs at least 4 cameras".into()));
    }
    if let Some((i, j)) = arr.coincident_pair() {
        return Err(Error::CoincidentFoci(i, j));
    }
    let plane = arr
        .focal_plane()
        .ok_or_else(|| Error::Precondition("the foci are not coplanar".into()))?;
    let basis = QMatrix::from_rows(vec![plane.clone()])?.kernel();
    let cam = |i: usize, x: &[Rational]| arr.camera(i).matrix().mul_vec(x).expect("4-vector");
    let nonzero = |v: &[Rational]| v.iter().any(|c| !c.is_zero());
    let grid = coefficient_grid();
    let on_line = |i: usize| -> Vec<Vec<Rational>> {
        grid.iter()
            .map(|c| cam(i, &combine(&basis, c)))
            .filter(|p| nonzero(p))
            .take(12)
            .collect()
    };
    let epipole = |i: usize, j: usize| -> Vec<Rational> { arr.epipole(j, i).expect("distinct foci").coords().to_vec() };

    let rest: Vec<Vec<Rational>> = (3..n).map(|i| on_line(i)[0].clone()).collect();
    for p1 in on_line(0) {
        if same_point(&p1, &epipole(0, 1)) || same_point(&p1, &epipole(0, 2)) {
            continue;
        }
        for p2 in on_line(1) {
            if same_point(&p2, &epipole(1, 0)) || same_point(&p2, &epipole(1, 2)) {
                continue;
            }
            let q = triangulate_on_plane(arr, &plane, &p1, &p2);
            let tilde = q.as_ref().map(|q| cam(2, q)).filter(|t| nonzero(t));
            for p3 in on_line(2) {
                if tilde.as_ref().is_some_and(|t| same_point(t, &p3)) {
                    continue;
                }
                let mut points = vec![p1.clone(), p2.clone(), p3];
                points.extend(rest.iter().cloned());
                if bifocals_vanish(arr, &points) && !rank_test_point(arr, &points)?.member {
                    return Ok(CoplanarWitness {
                        plane,
                        points,
                        consistent_third: tilde,
                    });
                }
            }
        }
    }
    Err(Error::Precondition("no witness found on the searched grid".into()))
}

/// Every `6 x 6` joint determinant of a camera pair vanishes at `points`.
pub(crate) fn bifocals_vanish(arr: &Arrangement, points: &[Vec<Rational>]) -> bool {
    let n = arr.n();
    (0..n).all(|i| {
        (i + 1..n).all(|j| {
            let m = QMatrix::from_fn(6, 6, |r, c| {
                let (cam, p, slot) = if r < 3 { (i, &points[i], 4) } else { (j, &points[j], 5) };
                match c {
                    c if c < 4 => arr.camera(cam).matrix().get(r % 3, c).clone(),
                    c if c == slot => p[r % 3].clone(),
                    _ => Rational::zero(),
                }
            });
            m.det().map(|d| d.is_zero()).unwrap_or(false)
        })
    })
}

/// The world point on `plane` imaged at `p1` and `p2` by cameras 1 and 2.
fn triangulate_on_plane(arr: &Arrangement, plane: &[Rational], p1: &[Rational], p2: &[Rational]) -> Option<Vec<Rational>> {
    let m = QMatrix::from_fn(7, 6, |r, c| match (r, c) {
        (r, c) if r < 3 && c < 4 => arr.camera(0).matrix().get(r, c).clone(),
        (r, 4) if r < 3 => -&p1[r],
        (r, c) if (3..6).contains(&r) && c < 4 => arr.camera(1).matrix().get(r - 3, c).clone(),
        (r, 5) if (3..6).contains(&r) => -&p2[r - 3],
        (6, c) if c < 4 => plane[c].clone(),
        _ => Rational::zero(),
    });
    let k = m.kernel();
    if k.len() != 1 {
        return None;
    }
    let q: Vec<Rational> = k[0][..4].to_vec();
    q.iter().any(|c| !c.is_zero()).then_some(q)
}

/// `(A_1 c_i, ..., p_i, ..., A_n c_i)` for camera `i` (0-based).
pub fn limit_point_tuple(arr: &Arrangement, i: usize, p: &[Rational]) -> Result<Vec<Vec<Rational>>> {
    if i >= arr.n() {
        return Err(Error::InvalidIndex(format!("camera {} of {}", i + 1, arr.n())));
    }
    if p.len() != 3 {
        return Err(Error::Dimension("image points have 3 coordinates".into()));
    }
    (0..arr.n())
        .map(|j| {
            if j == i {
                Ok(p.to_vec())
            } else {
                Ok(arr.epipole(i, j)?.coords().to_vec())
            }
        })
        .collect()
}

/// Evaluates every generator of `m` at the epipole tuple with free slot `i`.
pub fn limit_point_check(arr: &Arrangement, m: &Ideal, i: usize, p: &[Rational]) -> Result<VerificationReport> {
    let mut rep = VerificationReport::start(
        "cor_3_8",
        "epipoles of one focus together with any point in its own image lie on the multiview variety",
        arr,
    );
    if !rep.hypothesis("distinct_foci", arr.distinct_foci()) {
        return Ok(rep.violated("epipoles are undefined for coincident foci".into()));
    }
    let tuple = limit_point_tuple(arr, i, p)?;
    let bad: Vec<Witness> = m
        .generators()
        .iter()
        .filter(|g| !g.evaluate_image(&tuple).expect("tuple fits").is_zero())
        .take(1)
        .map(|g| Witness::polynomial("nonvanishing generator", g))
        .collect();
    let vanish =
        Check::new(&format!("camera {}: generators vanish", i + 1), bad.is_empty(), Expectation::Holds)
            .with(Witness::point("tuple", &tuple))
            .with_all(bad);
    rep.checks.push(vanish);
    let rt = rank_test_point(arr, &tuple)?;
    let mut rank = Check::new(&format!("camera {}: joint matrix drops rank", i + 1), rt.member, Expectation::Holds);
    if let Some(k) = &rt.kernel {
        rank = rank.with(Witness::kernel("kernel", k));
    }
    rep.checks.push(rank);
    rep.finish();
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::focal::k_focal_ideal;
    use crate::multiview::fixtures;

    #[test]
    fn coplanar_witness_kills_bifocals() {
        for arr in [fixtures::coplanar_four(), fixtures::collinear_four()] {
            let w = witness_coplanar(&arr).unwrap();
            let ctx = arr.context().unwrap();
            let h2 = k_focal_ideal(&arr, &ctx, 2).unwrap();
            for g in &h2.generators {
                assert!(g.poly.evaluate_image(&w.points).unwrap().is_zero());
            }
            assert!(!rank_test_point(&arr, &w.points).unwrap().member);
            for p in &w.points {
                let s = p.iter().fold(Rational::zero(), |a, c| &a + c);
                assert!(s.is_zero() || arr.collinear());
            }
        }
    }

    #[test]
    fn noncoplanar_has_no_witness() {
        assert!(witness_coplanar(&fixtures::noncoplanar_four()).is_err());
        assert!(witness_coplanar(&fixtures::three_views()).is_err());
    }

    #[test]
    fn limit_points_of_three_views() {
        let arr = fixtures::three_views();
        let ctx = arr.context().unwrap();
        let m = Ideal::parse(&ctx, &fixtures::THREE_VIEW_GENERATORS).unwrap();
        let r = |v: [i64; 3]| v.map(Rational::from_int).to_vec();
        assert!(limit_point_check(&arr, &m, 0, &r([7, 11, 13])).unwrap().holds);
        assert!(limit_point_check(&arr, &m, 1, &r([1, 0, 0])).unwrap().holds);
        let mut t = limit_point_tuple(&arr, 0, &r([7, 11, 13])).unwrap();
        t[1][1] = &t[1][1] + &Rational::one();
        assert!(m.generators().iter().any(|g| !g.evaluate_image(&t).unwrap().is_zero()));
    }
}
