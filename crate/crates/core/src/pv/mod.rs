//! The ring `K[X, 1/W]` attached to a linear system, its operator `v`, and the
//! left and right actions of `GL_n(C)`.

pub mod group;
pub mod ideal;
pub mod localized;
pub mod system;

pub use group::{left_action, left_action_poly, right_action, right_action_poly, GroupElement};
pub use ideal::{check_group_stable, check_v_stable, IdealPresentation};
pub use localized::LocalizedPoly;
pub use system::{poly_apply_v, pv_apply_v, LinearSystem};
