//! One linear equation over variables confined to open intervals.

use num::{Signed, Zero};
use serde::Serialize;

use crate::rational::{ser_opt_q, Q};

/// `coefficient * x` enters the equation; `x` must lie strictly between the bounds.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Bounds {
    pub coefficient: i64,
    #[serde(serialize_with = "ser_opt_q")]
    pub lower: Option<Q>,
    #[serde(serialize_with = "ser_opt_q")]
    pub upper: Option<Q>,
}

impl Bounds {
    pub fn contains(&self, x: &Q) -> bool {
        self.lower.as_ref().is_none_or(|l| x > l) && self.upper.as_ref().is_none_or(|u| x < u)
    }

    /// A comfortable interior point: the midpoint, zero when allowed, else one step in.
    fn start(&self, step: &Q) -> Q {
        match (&self.lower, &self.upper) {
            (Some(l), Some(u)) => (l + u) / Q::from_integer(2.into()),
            (Some(l), None) if l.is_negative() => Q::zero(),
            (Some(l), None) => l + step,
            (None, Some(u)) if u.is_positive() => Q::zero(),
            (None, Some(u)) => u - step,
            (None, None) => Q::zero(),
        }
    }
}

/// Finds `x` with `Σ c_i x_i = rhs` and every `x_i` strictly inside its bounds, or `None`
/// when no such point exists. Starts from an interior point and slides monotonically
/// toward the bounds that move the sum in the needed direction.
pub fn solve(vars: &[Bounds], rhs: &Q, step: &Q) -> Option<Vec<Q>> {
    let mut x: Vec<Q> = vars.iter().map(|b| b.start(step)).collect();
    let value = |x: &[Q]| -> Q {
        vars.iter()
            .zip(x)
            .map(|(b, xi)| Q::from_integer(b.coefficient.into()) * xi)
            .sum()
    };
    let delta = rhs - value(&x);
    if delta.is_zero() {
        return Some(x);
    }
    let up = delta.is_positive();
    // the bound each variable slides toward, None = unbounded in that direction
    let mut room = Q::zero();
    let mut targets: Vec<Option<Option<Q>>> = Vec::with_capacity(vars.len());
    for (b, xi) in vars.iter().zip(&x) {
        if b.coefficient == 0 {
            targets.push(None);
            continue;
        }
        let increase = (b.coefficient > 0) == up;
        let bound = if increase { &b.upper } else { &b.lower };
        match bound {
            None => {
                let c = Q::from_integer(b.coefficient.into());
                let i = targets.len();
                x[i] = xi + &delta / c;
                return Some(x);
            }
            Some(t) => {
                room += (t - xi).abs() * Q::from_integer(b.coefficient.abs().into());
                targets.push(Some(Some(t.clone())));
            }
        }
    }
    if room <= delta.abs() {
        return None;
    }
    let t = delta.abs() / room;
    for (xi, target) in x.iter_mut().zip(&targets) {
        if let Some(Some(bound)) = target {
            let moved = &*xi + (bound - &*xi) * &t;
            *xi = moved;
        }
    }
    Some(x)
}
