//! Exact combinatorics of higher-rank Drinfeld modular forms on the
//! Bruhat-Tits building.
//!
//! The crate computes, in exact arithmetic over `F_q[T]` and `Q`:
//!
//! - characteristic sequences of points of the apartment and their cycle
//!   structure ([`weyl`]),
//! - the inseparability complexes `W(k)` inside the Weyl chamber, with
//!   fullness / dimension / connectivity checks ([`weyl`]),
//! - spectral-norm logarithms of the para-Eisenstein series `alpha_k`
//!   ([`alpha`]) and of the coefficient forms `a_ell_k` in the finite
//!   torsion model ([`torsion`]),
//! - vertices of the building as Laurent-polynomial lattice classes, type-1
//!   arrows, shifts, and reduction to the Weyl chamber with a transport
//!   certificate in `GL(r, F_q[T])` ([`building`]),
//! - van der Put transforms on arrows and local inner degrees ([`mod@vdp`]),
//! - brute-force finite-field oracles: Moore determinants, exponential
//!   coefficients of finite lattices, and divisor-degree counts via
//!   multivariate division ([`oracle`], [`mvpoly`]),
//! - SVG/ASCII renderings of Weyl-chamber windows for rank 3 ([`render`]),
//! - the acceptance checks wired into the `verify` CLI subcommand
//!   ([`verify`]).
//!
//! All norms are handled through their base-q logarithms, which are exact
//! rationals; equality tests are exact, never epsilon-based.
//!
//! Every operation is a pure function over immutable values: contexts,
//! points, and lattice presentations never mutate after construction, so
//! all of it can be shared and called from concurrent workers without
//! coordination.

pub mod alpha;
pub mod building;
pub mod context;
pub mod error;
pub mod extfield;
pub mod fq;
pub mod mvpoly;
pub mod oracle;
pub mod poly;
pub mod rational;
pub mod render;
pub mod torsion;
pub mod vdp;
pub mod verify;
pub mod weyl;

pub use alpha::{alpha_constant_log, log_alpha_norm_point, log_alpha_norm_vertex};
pub use building::{
    arrows_type1, log_nu, points_to, reduce_to_weyl, shift_toward, standard_vertex, Arrow,
    GammaMatrix, LatticeVertex, LaurentMatrix, ReductionCertificate,
};
pub use context::{make_context, Context};
pub use error::{Error, Result};
pub use fq::{Fq, FqElem};
pub use mvpoly::inner_degree_via_moore;
pub use oracle::{
    beta_zero_count, exp_poly_coeffs, reduction_identity_check, moore_det, FqLattice, UModelLattice,
};
pub use poly::{FqLaurent, FqPoly};
pub use rational::{rat, ratio, LogVal, Rat};
pub use render::{chamber_figure, render_chamber, ChamberFigure, RenderFormat, RenderMode};
pub use torsion::{
    coeff_constant_log, log_coeff_norm, log_e_si, regime_agreement_verify, torsion_char_sequence,
    wprime_membership, TorsionCharSeq, TorsionSymbol,
};
pub use vdp::{automorphy_vdp, case_study_report, inner_degree, log_norm_at_vertex, vdp, FormSpec};
pub use weyl::{
    characteristic_sequence, cycle_structure, is_k_inseparable, standard_vertex_membership,
    wk_membership, wk_window, ApartmentPoint, BasisSymbol, CharSeqEntry, CycleCount, CycleRun,
    CycleStructure, WeylPoint, WeylVertex,
};
