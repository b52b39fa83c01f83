//! Bundled identity corpus, parsed once on first use.

use std::sync::OnceLock;

use crate::parser::{parse, IdentityFile};
use crate::poly::Identity;

pub const ALGEBRA_SRC: &str = include_str!("../corpus/algebra.ids");
pub const DIALGEBRA_SRC: &str = include_str!("../corpus/dialgebra.ids");

pub fn algebra() -> &'static IdentityFile {
    static FILE: OnceLock<IdentityFile> = OnceLock::new();
    FILE.get_or_init(|| parse(ALGEBRA_SRC).expect("bundled algebra corpus parses"))
}

pub fn dialgebra() -> &'static IdentityFile {
    static FILE: OnceLock<IdentityFile> = OnceLock::new();
    FILE.get_or_init(|| parse(DIALGEBRA_SRC).expect("bundled dialgebra corpus parses"))
}

/// Fetch a corpus identity by label, macros expanded.
pub fn identity(label: &str) -> Identity {
    let file = if algebra().entries.iter().any(|e| e.label == label) {
        algebra()
    } else {
        dialgebra()
    };
    file.identity(label).expect("bundled corpus lowers cleanly")
}
