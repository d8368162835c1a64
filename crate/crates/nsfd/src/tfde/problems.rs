//! Manufactured diffusion problems with known exact solutions.

use std::f64::consts::PI;

use crate::fraccore::gamma::gamma;
use crate::fraccore::order::FractionalOrder;
use crate::tfde::{SpaceDim, TfdeProblem};

/// The two manufactured diffusion examples (1D and 2D).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TfdeExample {
    /// 1D on `[0,1]`: zero initial data, forcing
    /// `t^3 sin(pi x) (Gamma(4+alpha)/6 + pi^2 t^alpha)`,
    /// exact `u = t^{3+alpha} sin(pi x)`.
    Ex3,
    /// 2D on `[0,1]^2`: zero initial data, forcing
    /// `t^3 sin(pi x) sin(pi y) (Gamma(4+alpha)/6 + 2 pi^2 t^alpha)`,
    /// exact `u = t^{3+alpha} sin(pi x) sin(pi y)`.
    Ex4,
}

impl TfdeExample {
    pub fn id(self) -> &'static str {
        match self {
            TfdeExample::Ex3 => "ex3",
            TfdeExample::Ex4 => "ex4",
        }
    }
}

/// Build an example problem on the unit domain with `T = 1`.
pub fn example_tfde(id: TfdeExample, alpha: FractionalOrder) -> TfdeProblem {
    let a = alpha.get();
    let c = gamma(4.0 + a) / 6.0;
    match id {
        TfdeExample::Ex3 => TfdeProblem {
            dim: SpaceDim::One,
            extent: 1.0,
            t_final: 1.0,
            initial: Box::new(|_x, _y| 0.0),
            forcing: Box::new(move |x, _y, t| {
                t.powi(3) * (PI * x).sin() * (c + PI * PI * t.powf(a))
            }),
            exact: Some(Box::new(move |x, _y, t| t.powf(3.0 + a) * (PI * x).sin())),
        },
        TfdeExample::Ex4 => TfdeProblem {
            dim: SpaceDim::Two,
            extent: 1.0,
            t_final: 1.0,
            initial: Box::new(|_x, _y| 0.0),
            forcing: Box::new(move |x, y, t| {
                t.powi(3) * (PI * x).sin() * (PI * y).sin() * (c + 2.0 * PI * PI * t.powf(a))
            }),
            exact: Some(Box::new(move |x, y, t| {
                t.powf(3.0 + a) * (PI * x).sin() * (PI * y).sin()
            })),
        },
    }
}

/// The 1D example stretched to a domain of length `l`, with the forcing
/// rebuilt so the exact solution stays a single sine mode:
/// `u = t^{3+alpha} sin(pi x / l)`. Used by the stability-frontier scan,
/// where the grid is refined on a fixed long domain until the explicit
/// scheme blows up.
pub fn frontier_problem(alpha: FractionalOrder, l: f64) -> TfdeProblem {
    let a = alpha.get();
    let c = gamma(4.0 + a) / 6.0;
    let k = PI / l;
    TfdeProblem {
        dim: SpaceDim::One,
        extent: l,
        t_final: 1.0,
        initial: Box::new(|_x, _y| 0.0),
        forcing: Box::new(move |x, _y, t| t.powi(3) * (k * x).sin() * (c + k * k * t.powf(a))),
        exact: Some(Box::new(move |x, _y, t| t.powf(3.0 + a) * (k * x).sin())),
    }
}
