//! The multiview ideal and machine-checkable verifications of its relations
//! to the determinantal ideals.

pub mod fixtures;
mod report;
mod verify;
mod witness;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::camera::Arrangement;
use crate::error::{Error, Result};
use crate::focal::k_focal_ideal;
use crate::ideal::Ideal;
use crate::poly::{Polynomial, VariableContext};

pub use report::{Check, Expectation, Hypothesis, Outcome, VerificationReport, Witness};
pub use verify::{verify, verify_all, TheoremId, VerifyOptions};
pub use witness::{limit_point_check, limit_point_tuple, witness_coplanar, CoplanarWitness};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Eliminate world coordinates and depths from the graph of the
    /// projection.
    Elimination,
    /// `H^2 + H^3`, valid for pairwise distinct foci.
    FocalSum,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Elimination => "elimination",
            Method::FocalSum => "focal_sum",
        })
    }
}

impl FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "elimination" => Ok(Method::Elimination),
            "focal_sum" | "focal-sum" => Ok(Method::FocalSum),
            other => Err(Error::Parse(format!("unknown method `{other}`"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct MultiviewIdeal {
    pub ideal: Ideal,
    pub method: Method,
    pub fingerprint: String,
}

/// Generators `p_i - l_i A_i q` of the graph of `(q, l) -> (l_i A_i q)_i`.
///
/// Here `l_i` is an inverse depth. Eliminating `q` and `l` from this ideal
/// gives the vanishing ideal of the closure of the image, which is the
/// multiview ideal.
pub fn projection_graph(arr: &Arrangement, ctx: &Arc<VariableContext>) -> Result<Ideal> {
    if ctx.n_cameras() != arr.n() {
        return Err(Error::ContextMismatch);
    }
    let q: Vec<Polynomial> = (0..4).map(|i| Polynomial::var(ctx, ctx.world(i))).collect();
    let mut gens = Vec::with_capacity(3 * arr.n());
    for (i, cam) in arr.cameras().iter().enumerate() {
        let l = Polynomial::var(ctx, ctx.depth(i));
        for r in 0..3 {
            let aq = (0..4).fold(Polynomial::zero(ctx), |acc, c| &acc + &q[c].scale(cam.matrix().get(r, c)));
            gens.push(&Polynomial::var(ctx, ctx.image_var(i, r)) - &(&l * &aq));
        }
    }
    Ideal::new(ctx, gens)
}

pub fn multiview_ideal(arr: &Arrangement, ctx: &Arc<VariableContext>, method: Method) -> Result<MultiviewIdeal> {
    let ideal = match method {
        Method::Elimination => projection_graph(arr, ctx)?.eliminate(ctx.world_and_depths()),
        Method::FocalSum => {
            if let Some((i, j)) = arr.coincident_pair() {
                return Err(Error::Precondition(format!(
                    "the focal sum needs pairwise distinct foci, but cameras {} and {} share a focus; \
                     with coincident foci H^2 + H^3 can be strictly smaller than the multiview ideal",
                    i + 1,
                    j + 1
                )));
            }
            let h2 = k_focal_ideal(arr, ctx, 2)?.ideal;
            if arr.n() >= 3 {
                h2.sum(&k_focal_ideal(arr, ctx, 3)?.ideal)?
            } else {
                h2
            }
        }
    };
    Ok(MultiviewIdeal {
        ideal,
        method,
        fingerprint: arr.fingerprint(),
    })
}

/// Focal sum when the foci are distinct, elimination otherwise.
pub fn multiview_ideal_auto(arr: &Arrangement, ctx: &Arc<VariableContext>) -> Result<MultiviewIdeal> {
    let method = if arr.distinct_foci() { Method::FocalSum } else { Method::Elimination };
    multiview_ideal(arr, ctx, method)
}
