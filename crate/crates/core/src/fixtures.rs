//! Small named families used throughout the tests and examples.

use crate::toggle::SetFamily;

fn family(ground: &[&str], sets: &[&[&str]]) -> SetFamily {
    let sets: Vec<Vec<&str>> = sets.iter().map(|s| s.to_vec()).collect();
    SetFamily::new(ground, &sets).expect("fixture is valid")
}

/// Order ideals of the 2-chain `a < b`: `∅, {a}, {a,b}`.
pub fn chain2() -> SetFamily {
    family(&["a", "b"], &[&[], &["a"], &["a", "b"]])
}

/// All subsets of `{a, b}`: `∅, {a}, {b}, {a,b}`.
pub fn boolean2() -> SetFamily {
    family(&["a", "b"], &[&[], &["a"], &["b"], &["a", "b"]])
}

/// Order ideals of the 3-chain `a < b < c`.
pub fn chain3() -> SetFamily {
    family(
        &["a", "b", "c"],
        &[&[], &["a"], &["a", "b"], &["a", "b", "c"]],
    )
}

/// `{∅,{a}} ⊗ {∅,{b},{b,c}}`.
pub fn prod23() -> SetFamily {
    family(
        &["a", "b", "c"],
        &[
            &[],
            &["b"],
            &["b", "c"],
            &["a"],
            &["a", "b"],
            &["a", "b", "c"],
        ],
    )
}

pub fn all() -> Vec<SetFamily> {
    vec![chain2(), boolean2(), chain3(), prod23()]
}

pub fn by_name(name: &str) -> Option<SetFamily> {
    match name {
        "chain2" => Some(chain2()),
        "boolean2" => Some(boolean2()),
        "chain3" => Some(chain3()),
        "prod23" => Some(prod23()),
        _ => None,
    }
}
