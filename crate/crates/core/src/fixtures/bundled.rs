//! Fixtures shipped with the binary and used by `selftest`.

pub struct Bundled {
    pub name: &'static str,
    pub source: &'static str,
}

macro_rules! bundle {
    ($($name:literal),* $(,)?) => {
        &[$(Bundled { name: $name, source: include_str!(concat!("../../fixtures/", $name, ".json")) }),*]
    };
}

pub const BUNDLED: &[Bundled] = bundle!(
    "elliptic",
    "pure",
    "two_block",
    "offset_monodromy",
    "tree",
    "banana",
    "two_loop",
    "smooth_curve",
    "surgery",
    "surgery_three_nodes",
    "pg_cy",
);

pub fn get(name: &str) -> Option<&'static str> {
    BUNDLED.iter().find(|b| b.name == name).map(|b| b.source)
}
