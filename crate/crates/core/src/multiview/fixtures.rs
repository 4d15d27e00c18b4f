//! Named translational arrangements used as test fixtures.

use crate::camera::Arrangement;
use crate::poly::Rational;

fn translational(ts: &[[i64; 3]]) -> Arrangement {
    Arrangement::translational_ints(ts).expect("fixture cameras are valid")
}

/// Three cameras at `0, e_1, e_2`.
pub fn three_views() -> Arrangement {
    translational(&[[0, 0, 0], [1, 0, 0], [0, 1, 0]])
}

/// Two cameras at `0, e_1`.
pub fn two_views() -> Arrangement {
    translational(&[[0, 0, 0], [1, 0, 0]])
}

/// Four cameras, the first two sharing a focus.
pub fn coincident_foci() -> Arrangement {
    translational(&[[0, 0, 0], [0, 0, 0], [1, 1, 1], [-1, -1, -1]])
}

/// Four cameras at `0, e_1, e_2, e_3`.
pub fn noncoplanar_four() -> Arrangement {
    translational(&[[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]])
}

/// Four cameras at `e_1, e_2, e_3` and their centroid.
pub fn coplanar_four() -> Arrangement {
    let r = Rational::from_int;
    let third = Rational::new(1, 3);
    Arrangement::translational(&[
        [r(1), r(0), r(0)],
        [r(0), r(1), r(0)],
        [r(0), r(0), r(1)],
        [third.clone(), third.clone(), third],
    ])
    .expect("fixture cameras are valid")
}

/// Four cameras along the first axis.
pub fn collinear_four() -> Arrangement {
    translational(&[[0, 0, 0], [1, 0, 0], [2, 0, 0], [3, 0, 0]])
}

/// Five translations `0, e_3, 2e_3, e_2, e_3`. The second and fifth
/// coincide and all five centers lie on the plane `x = 0`.
pub fn five_views_as_listed() -> Arrangement {
    translational(&[[0, 0, 0], [0, 0, 1], [0, 0, 2], [0, 1, 0], [0, 0, 1]])
}

/// Five cameras with distinct, noncoplanar centers `0, e_1, 2e_1, e_2, e_3`;
/// the first three are collinear.
pub fn five_views() -> Arrangement {
    translational(&[[0, 0, 0], [1, 0, 0], [2, 0, 0], [0, 1, 0], [0, 0, 1]])
}

/// Every fixture by name.
pub fn by_name(name: &str) -> Option<Arrangement> {
    Some(match name {
        "three_views" => three_views(),
        "two_views" => two_views(),
        "coincident_foci" => coincident_foci(),
        "noncoplanar_four" => noncoplanar_four(),
        "coplanar_four" => coplanar_four(),
        "collinear_four" => collinear_four(),
        "five_views_as_listed" => five_views_as_listed(),
        "five_views" => five_views(),
        _ => return None,
    })
}

pub const NAMES: [&str; 8] = [
    "three_views",
    "two_views",
    "coincident_foci",
    "noncoplanar_four",
    "coplanar_four",
    "collinear_four",
    "five_views_as_listed",
    "five_views",
];

/// The four listed generators of the three-view multiview ideal.
pub const THREE_VIEW_GENERATORS: [&str; 4] = [
    "y1*z2 - y2*z1",
    "x2*z3 - x3*z2 + y2*z3 - y3*z2",
    "x1*z3 - x3*z1",
    "x1*x3*y2 + x1*y2*y3 - x2*x3*y1 - x3*y1*y2",
];

/// The extra component of `H^2 + H^3` for [`coincident_foci`].
pub const COINCIDENT_COMPONENT: [&str; 4] = ["y4 - z4", "y3 - z3", "x4 - z4", "x3 - z3"];

/// The extra component of `H^2` for [`coplanar_four`].
pub const COPLANAR_COMPONENT: [&str; 4] = ["x4 + y4 + z4", "x3 + y3 + z3", "x2 + y2 + z2", "x1 + y1 + z1"];

/// A trifocal of the five-view arrangement claimed not to lie in `H^2`.
pub const FIVE_VIEW_TRIFOCAL: &str = "-x1*y2*y3 + 2*x2*y1*y3 - x3*y1*y2";
