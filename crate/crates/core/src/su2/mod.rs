//! Spin coherent states.

pub mod density;
pub mod dynamics;
pub mod rep;
pub mod states;
pub mod zrep;

pub use rep::{SU2Element, SpinRep};
pub use states::{
    coherent_state, d_constant, d_theoretical, highest_weight_overlap_sq, identity_check,
    identity_check_with_constant, overlap, overlap_modulus_jacobi, overlap_modulus_wigner,
};
pub use zrep::{
    inverse_stereographic, mobius_action, overlap_disk, polynomial_to_state, state_to_polynomial, stereographic,
    z_action, z_function, z_inner, zeta_for_state, ChartPoint, MobiusImage,
};
pub use density::{
    group_average_projector, p_operator, p_operator_closed_form, p_to_rho, q_function, rho_to_p, DensityMatrix,
    OperatorFromP, PCoefficients,
};
pub use dynamics::{
    evolve_classical, evolve_quantum, expectation_vector, fidelity_deficit, max_coherent_fidelity,
    ClassicalTrajectory, Field, QuantumTrajectory, SampledField,
};
