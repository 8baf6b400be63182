//! Weight multiplicities, explicit irreducible modules, tensor products and
//! the Cartan product.

pub mod freudenthal;
pub mod kostant;
pub mod module;
pub mod tensor;

pub use freudenthal::{multiplicity_freudenthal, DominantCharacter};
pub use kostant::{multiplicity_oracle, KostantOracle};
pub use module::{build_module, BlockVec, Gen, IrreducibleModule, DEFAULT_DIM_CAP};
pub use tensor::{cartan_project, tensor_module, TensorModule};
