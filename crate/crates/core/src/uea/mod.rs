//! Universal enveloping algebras from structure-constant presentations:
//! PBW normal ordering, products, coproduct, counit and tensor powers.

mod element;
mod spec;
mod tensor;

pub use element::{PbwMonomial, UEAElement};
pub use spec::{
    same_spec, AntisymmetryViolation, JacobiViolation, LieAlgebraSpec, LieValidation,
};
pub use tensor::TensorElement;

pub(crate) use spec::check_same_spec;
