//! Worked examples shipped with the crate.
//!
//! Documents in `fixtures/` are compiled in, so isometry and group files can
//! refer to a lattice by its bundled name.

use std::path::PathBuf;

macro_rules! bundle {
    ($dir:literal: $($name:literal),* $(,)?) => {
        &[$(($name, include_str!(concat!("../fixtures/", $dir, "/", $name, ".json")))),*]
    };
}

pub const LATTICES: &[(&str, &str)] =
    bundle!("lattices": "gram_u", "gram_p", "u_plus_m1", "rank3", "u_e8", "e10");

pub const ISOMETRIES: &[(&str, &str)] = bundle!("isometries":
    "pell", "pell_squared", "pell_cubed", "pell_fourth", "pell_fifth", "pell_inverse",
    "swap", "para", "pell3", "pell3_conj", "pell3_flip", "lehmer_coxeter",
);

pub const GROUPS: &[(&str, &str)] =
    bundle!("groups": "para", "pell", "swap", "pell_powers", "pell3_with_flip");

/// Documents that must be rejected by validation.
pub const INVALID: &[(&str, &str)] = bundle!("invalid": "e8_neg", "not_isometry", "cone_swap");

fn lookup(table: &[(&str, &'static str)], name: &str) -> Option<&'static str> {
    let stem = name.strip_suffix(".json").unwrap_or(name);
    table.iter().find(|(n, _)| *n == stem).map(|(_, s)| *s)
}

pub fn lattice_source(name: &str) -> Option<&'static str> {
    lookup(LATTICES, name)
}

pub fn isometry_source(name: &str) -> Option<&'static str> {
    lookup(ISOMETRIES, name)
}

pub fn group_source(name: &str) -> Option<&'static str> {
    lookup(GROUPS, name)
}

/// On-disk location of the fixture tree in the source checkout.
pub fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}
