pub mod error;
pub mod frame;
pub mod maps;
pub mod reflection;
pub mod selection;
pub mod set;
pub mod sublocale;

pub use error::{Error, Result};
pub use frame::{Elem, ElemFlags, Frame, Relation};
pub use maps::{is_subfit, map_class, FrameHom, LocalicMap, MapClass};
pub use reflection::{
    check_squares, frame_props, lift_hom, reflect, FrameProps, GammaKind, Reflection,
    IDEAL_COUNT_CAP,
};
pub use selection::{
    assertive_conditions, beta_witness, is_beta_map_thm, is_gamma_map, is_lambda_map_thm,
    is_st_lambda_map, lambda_witness, BetaMode, CustomSelection, LambdaMode, Selection,
};
pub use sublocale::{enumerate_sublocales, join_all, Sublocale, SublocaleKind};
