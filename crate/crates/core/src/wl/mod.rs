//! Weisfeiler-Leman refinement: graph closures, m-ary refinement and the
//! bijective pebble game.

mod graph;
mod mary;
mod pebble;

pub use graph::{graphs_wl2_equivalent, wl_closure, ArcColoredGraph};
pub use mary::{
    projection, validate_mary, wl_m_equivalent, wl_m_joint, wl_m_refine, MAryConfig, WlOptions,
};
pub use pebble::{pebble_game_oracle, GameTable, OracleOptions};
