//! Named variety presets: signature, ambient space, defining identities.

use crate::corpus;
use crate::poly::Identity;
use crate::spaces::AmbientSpace;
use crate::term::Signature;

#[derive(Debug, Clone)]
pub struct VarietyPresentation {
    pub name: &'static str,
    pub signature: Signature,
    /// Ambient space for consequence computations; quotient relations that
    /// the straightening absorbs (bar identities, right anticommutativity)
    /// do not reappear among the defining identities.
    pub space: AmbientSpace,
    pub defining: Vec<Identity>,
    /// Nonlinear display forms where the definition has them.
    pub nonlinear_display: Vec<Identity>,
    /// Use the pointed-word normal form instead of a rank computation.
    pub pointed_normal_form: bool,
}

pub const PRESET_NAMES: &[&str] = &[
    "associative-dialgebra",
    "alternative-dialgebra",
    "flexible-dialgebra",
    "0-dialgebra",
    "right-anticommutative",
    "malcev-dialgebra",
    "leibniz",
    "lie",
    "malcev",
];

pub fn preset(name: &str) -> Option<VarietyPresentation> {
    let ids =
        |labels: &[&str]| -> Vec<Identity> { labels.iter().map(|l| corpus::identity(l)).collect() };
    Some(match name {
        "associative-dialgebra" => VarietyPresentation {
            name: "associative-dialgebra",
            signature: Signature::Dialgebra,
            space: AmbientSpace::Dialgebra,
            defining: ids(&[
                "left-associativity",
                "inner-associativity",
                "right-associativity",
            ]),
            nonlinear_display: vec![],
            pointed_normal_form: true,
        },
        "alternative-dialgebra" => VarietyPresentation {
            name: "alternative-dialgebra",
            signature: Signature::Dialgebra,
            space: AmbientSpace::Dialgebra,
            defining: ids(&[
                "liu-alternative-1",
                "liu-alternative-2",
                "liu-alternative-3",
            ]),
            nonlinear_display: vec![],
            pointed_normal_form: false,
        },
        "flexible-dialgebra" => VarietyPresentation {
            name: "flexible-dialgebra",
            signature: Signature::Dialgebra,
            space: AmbientSpace::Dialgebra,
            defining: ids(&["flexible-1", "flexible-2"]),
            nonlinear_display: vec![],
            pointed_normal_form: false,
        },
        "0-dialgebra" => VarietyPresentation {
            name: "0-dialgebra",
            signature: Signature::Dialgebra,
            space: AmbientSpace::Dialgebra,
            defining: vec![],
            nonlinear_display: vec![],
            pointed_normal_form: false,
        },
        "right-anticommutative" => VarietyPresentation {
            name: "right-anticommutative",
            signature: Signature::Plain,
            space: AmbientSpace::RightAnticommutative,
            defining: vec![],
            nonlinear_display: vec![],
            pointed_normal_form: false,
        },
        "malcev-dialgebra" => VarietyPresentation {
            name: "malcev-dialgebra",
            signature: Signature::Plain,
            space: AmbientSpace::RightAnticommutative,
            defining: ids(&["di-malcev"]),
            nonlinear_display: vec![],
            pointed_normal_form: false,
        },
        "leibniz" => VarietyPresentation {
            name: "leibniz",
            signature: Signature::Plain,
            space: AmbientSpace::Plain,
            defining: ids(&["leibniz"]),
            nonlinear_display: vec![],
            pointed_normal_form: false,
        },
        "lie" => VarietyPresentation {
            name: "lie",
            signature: Signature::Plain,
            space: AmbientSpace::Plain,
            defining: ids(&["anticommutativity", "jacobi"]),
            nonlinear_display: vec![],
            pointed_normal_form: false,
        },
        "malcev" => VarietyPresentation {
            name: "malcev",
            signature: Signature::Plain,
            space: AmbientSpace::Plain,
            defining: ids(&["anticommutativity", "malcev-sagle"]),
            nonlinear_display: ids(&["malcev-nonlinear"]),
            pointed_normal_form: false,
        },
        _ => return None,
    })
}
