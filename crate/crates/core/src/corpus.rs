//! Built-in example arrangements, embedded at compile time.

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::milnor::SuiteMember;
use crate::spectra::UserTables;

pub const ENTRIES: &[(&str, &str)] = &[
    ("concurrent3", include_str!("../corpus/concurrent3.json")),
    ("triangle3", include_str!("../corpus/triangle3.json")),
    ("doubleline", include_str!("../corpus/doubleline.json")),
    (
        "pencil3planes",
        include_str!("../corpus/pencil3planes.json"),
    ),
    ("fourplanes", include_str!("../corpus/fourplanes.json")),
    ("sixlines_a", include_str!("../corpus/sixlines_a.json")),
    ("sixlines_b", include_str!("../corpus/sixlines_b.json")),
    ("doubleplane3", include_str!("../corpus/doubleplane3.json")),
];

/// The five arrangements every acceptance criterion runs on.
pub const CORE: &[&str] = &[
    "concurrent3",
    "triangle3",
    "doubleline",
    "pencil3planes",
    "fourplanes",
];

pub fn names() -> impl Iterator<Item = &'static str> {
    ENTRIES.iter().map(|(n, _)| *n)
}

pub fn load(name: &str) -> Result<Arrangement> {
    let (_, text) = ENTRIES
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| Error::InvalidArrangement(format!("no corpus entry {name:?}")))?;
    Arrangement::from_json(text)
}

pub fn all() -> Vec<(&'static str, Arrangement)> {
    names()
        .map(|n| (n, load(n).expect("corpus entries parse")))
        .collect()
}

/// Every corpus entry with catalogue spectra.
pub fn suite() -> Vec<SuiteMember> {
    all()
        .into_iter()
        .map(|(name, arrangement)| SuiteMember {
            name: name.to_string(),
            arrangement,
            tables: UserTables::default(),
        })
        .collect()
}
