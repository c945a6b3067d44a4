//! Spectrum and nodal structure of the Robin Laplacian on the square
//! (−π/2, π/2)² with negative boundary parameter h.

pub mod error;
pub mod interval;
pub mod nodal;
pub mod roots;
pub mod square;
pub mod union_find;

pub use error::{Error, Result};
pub use interval::{
    alpha_asymptotic, beta_excess, beta_gap_squared, critical_mode, eval_mode, mu_coefficients, slot_mode, solve_alpha,
    solve_beta0, solve_beta1, AsymptoticEval, IntervalEigenvalue, ModeIndex, ModeKind, Parity, Regime, RobinParam,
    Shape, SlotMode, Tolerances, CRITICAL_EIGENVALUE, CRITICAL_H, TAU_BC, TAU_REG,
};
pub use nodal::{
    count_boundary_zeros, count_nodal_domains, count_nodal_domains_checked, courant_sharp_verdict, critical_thetas,
    euler_bound, eval_phi, sweep_theta, theta_asymptotics, wronskian_zeros, CriticalZeroSet, Eigenfunction,
    EigenfunctionSpec, LabelVerdict, NodalReport, Verdict, WronskianZeros,
};
pub use square::{
    a_value, counting_bound_check, enumerate_spectrum, find_crossings, find_h2_star, find_h9_star,
    minimal_labelling_check, pair_value, sigma, sigma_scaled, tilde_h, AkValue, CountingReport, CrossingRecord,
    LabelCheck, PairIndex, SpectrumEntry, TableCase,
};
