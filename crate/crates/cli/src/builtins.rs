//! Example documents shipped with the binary.

pub const BUILTINS: &[(&str, &str)] = &[
    ("product", include_str!("../fixtures/product.code")),
    ("dual-product", include_str!("../fixtures/dual-product.code")),
    ("cluster-like", include_str!("../fixtures/cluster-like.code")),
    ("toric", include_str!("../fixtures/toric.code")),
    ("z2-chain", include_str!("../fixtures/z2-chain.code")),
    ("semion-d0", include_str!("../fixtures/semion-d0.code")),
    ("z4", include_str!("../fixtures/z4.code")),
    ("majorana", include_str!("../fixtures/majorana.code")),
];

/// Looks up `name`, `examples/name` or `name.code`.
pub fn builtin(path: &str) -> Option<&'static str> {
    let stem = path.strip_prefix("examples/").unwrap_or(path);
    let stem = stem.strip_suffix(".code").unwrap_or(stem);
    BUILTINS.iter().find(|(n, _)| *n == stem).map(|(_, text)| *text)
}
