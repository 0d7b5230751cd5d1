//! Counterexample families: singular radial profiles, entire solutions that
//! are not bubbles, and sequences with unbounded gradients.

mod blowup;
mod nonbubble;
mod ode;
mod singular;

pub use blowup::{
    c_schedule, gradient_blowup, sigma_half_constant, BlowupCheck, BlowupFamily, BlowupKind, BlowupReport,
};
pub use nonbubble::{nonbubble_entire, NonBubble, NonBubbleReport, NONBUBBLE_POINTS, NONBUBBLE_WINDOW};
pub use ode::{
    existence_predicate, first_integral, integrate_ode, integrate_ode_with, ode_options, Existence, OdeOutcome,
    OdeSample, OdeSetup, OdeTrajectory,
};
pub use singular::{singular_profile, DirectionCheck, SingularKind, SingularProfile};
