//! Orthogonal grid embeddings, exact unit-disk layouts and the two
//! unit-disk reductions.

mod disks;
mod embed;
mod embedding;
mod unit_disk;

pub use disks::{
    disks_from_csv, disks_to_csv, disks_to_dot, disks_to_svg, intersection_graph, separation_violations, Disk,
    Rational,
};
pub use embed::{embed_orthogonal, embed_orthogonal_scaled, graph_is_planar, DEFAULT_SCALE};
pub use embedding::{embedding_diagnostics, parse_embedding, validate_embedding, EdgePath, GridEmbedding, Lattice};
pub use unit_disk::{
    reduce_unit_disk, unit_disk_forward_certificate, DiskLayout, HD_U_SIDE, HD_V_SIDE, TSD_U_SIDE, TSD_V_SIDE,
};
