//! Billiard tables as pairs of fold involutions on `1..=P`.

pub mod decompose;
pub mod fold;
pub mod lemma;
pub mod merge;
pub mod render;
pub mod table;

pub use decompose::{
    decompose, summarize, CycleSummary, DecomposeError, DecompositionSummary, PathSummary,
    TableDecomposition,
};
pub use fold::{parse_fold_pair, FoldInputError, FoldSegment, FoldSystem, FoldViolation};
pub use lemma::{
    component_residues, gcd, lemma_predict, residue_coloring, ComponentKind, ComponentResidues,
    LemmaError, LemmaPrediction, ResidueColoring,
};
pub use merge::{
    apply_ring_splice, merge_components, merge_components_traced, merge_cycles, MergeError,
    MergeOutcome, RingSplice, SpliceLink, DEFAULT_MERGE_BUDGET,
};
pub use render::{render_folds_svg, render_table_svg};
pub use table::{halved_label, rect_table, BilliardTable, TableError, MAX_CORNER};
