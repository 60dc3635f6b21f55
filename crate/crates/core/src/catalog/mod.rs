//! The pattern catalogs `F*_l` and `F_l` and the coefficient matrices `E`,
//! `P`, `K`.

mod enumerate;
mod matrices;

pub use enumerate::{enumerate_catalog, enumerate_catalog_by_vertex_count, Catalog, CatalogEntry, MAX_CATALOG_LEN};
pub use matrices::{build_matrices, verify_rank, CoefficientMatrices, Finding, RankReport};
