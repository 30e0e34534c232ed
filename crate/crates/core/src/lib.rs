//! Exact constructions, verification and certification of multithreshold
//! representations for disjoint unions of small cliques and complete
//! multipartite graphs with small parts.

pub mod exactnum;
pub mod formulas;
pub mod graphs;
pub mod constructions;
pub mod colorings;
pub mod oracle;
