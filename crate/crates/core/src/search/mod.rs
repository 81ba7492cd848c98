//! Exhaustive search over all small graphs.

mod classes;
mod enumerate;
mod recon;

pub use classes::{checkpoint_path, same_deck_classes, SearchOptions, SearchReport};
pub use enumerate::{count_graphs, enumerate_graphs, for_each_graph, EnumOptions, ENUMERATION_LIMIT};
pub use recon::{
    check_distinguishing, find_distinguishing, is_same_deck_pair, max_reconstructibility, sw_card_multiset,
    CardSelection, SelectedCard, DISTINGUISHING_LIMIT, MAX_RECON_LIMIT,
};
