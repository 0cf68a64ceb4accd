//! Named groups and retraction pairs used by the regression battery.

use std::sync::Arc;

use crate::groups::{two_sections_example, FiniteGroup, RetractionPair};

fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

fn perm_group(degree: usize, gens: &[Vec<usize>], names: &[&str]) -> Arc<FiniteGroup> {
    Arc::new(FiniteGroup::from_permutations(degree, gens, &labels(names)).expect("catalog group"))
}

pub fn cyclic(n: usize) -> Arc<FiniteGroup> {
    let c: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    perm_group(n, &[c], &["a"])
}

pub fn symmetric3() -> Arc<FiniteGroup> {
    perm_group(3, &[vec![1, 2, 0], vec![1, 0, 2]], &["r", "t"])
}

pub fn dihedral4() -> Arc<FiniteGroup> {
    perm_group(4, &[vec![1, 2, 3, 0], vec![3, 2, 1, 0]], &["r", "f"])
}

/// Quaternion group acting on itself by left multiplication; element
/// `sign·4 + unit` with units `1, i, j, k`.
pub fn quaternion() -> Arc<FiniteGroup> {
    // unit products: (sign, unit) of u·v
    const TABLE: [[(usize, usize); 4]; 4] = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    let left = |u: usize| -> Vec<usize> {
        (0..8)
            .map(|x| {
                let (s, v) = (x / 4, x % 4);
                let (s2, w) = TABLE[u][v];
                ((s + s2) % 2) * 4 + w
            })
            .collect()
    };
    perm_group(8, &[left(1), left(2)], &["i", "j"])
}

pub fn alternating4() -> Arc<FiniteGroup> {
    perm_group(4, &[vec![1, 2, 0, 3], vec![1, 0, 3, 2]], &["c", "d"])
}

fn words(ws: &[&str]) -> Vec<String> {
    labels(ws)
}

/// The order-12 group with `H = ⟨z⟩` and section `1` (`y ↦ 1`) or `2` (`y ↦ z`).
pub fn two_sections(section: u8) -> RetractionPair {
    let (k, _) = two_sections_example();
    let images = match section {
        1 => ["1", "1", "z"],
        2 => ["1", "z", "z"],
        _ => panic!("sections are numbered 1 and 2"),
    };
    RetractionPair::from_words(k, &words(&["z"]), &words(&images)).expect("valid retraction")
}

/// `ℤ/6 → ℤ/2 = ⟨a³⟩`, `a ↦ a³`; kernel `ℤ/3`.
pub fn z6_over_z2() -> RetractionPair {
    RetractionPair::from_words(cyclic(6), &words(&["a^3"]), &words(&["a^3"])).expect("valid retraction")
}

/// `S₃ → ⟨t⟩` by the sign; kernel `ℤ/3`.
pub fn s3_sign() -> RetractionPair {
    RetractionPair::from_words(symmetric3(), &words(&["t"]), &words(&["1", "t"])).expect("valid retraction")
}

pub fn klein4() -> Arc<FiniteGroup> {
    perm_group(4, &[vec![1, 0, 2, 3], vec![0, 1, 3, 2]], &["a", "b"])
}

/// The two retractions `ℤ/2 × ℤ/2 → ⟨a⟩` killing `b` or `ab`.
pub fn klein_sections() -> (RetractionPair, RetractionPair) {
    let k = klein4();
    let s1 = RetractionPair::from_words(k.clone(), &words(&["a"]), &words(&["a", "1"])).unwrap();
    let s2 = RetractionPair::from_words(k, &words(&["a"]), &words(&["a", "a"])).unwrap();
    (s1, s2)
}

/// Groups of the trivial-subgroup battery.
pub fn peter_weyl_groups() -> Vec<(&'static str, Arc<FiniteGroup>)> {
    vec![
        ("Z4", cyclic(4)),
        ("Z6", cyclic(6)),
        ("S3", symmetric3()),
        ("D4", dihedral4()),
        ("Q8", quaternion()),
        ("A4", alternating4()),
    ]
}

/// A short name for small groups: `Z<n>` when cyclic, otherwise the first
/// catalog group it is isomorphic to, otherwise `order-<n>`.
pub fn identify(g: &Arc<FiniteGroup>) -> String {
    let n = g.order();
    if (0..n).any(|x| g.element_order(x) == n) {
        return format!("Z{n}");
    }
    type Builder = fn() -> Arc<FiniteGroup>;
    let named: [(&str, Builder); 5] = [
        ("Z2xZ2", klein4),
        ("S3", symmetric3),
        ("D4", dihedral4),
        ("Q8", quaternion),
        ("A4", alternating4),
    ];
    for (name, build) in named {
        let candidate = build();
        if candidate.order() == n && matches!(crate::groups::is_isomorphic(g, &candidate), Ok(Some(_))) {
            return name.to_string();
        }
    }
    format!("order-{n}")
}

/// A named battery case.
pub struct Case {
    pub name: String,
    pub pair: RetractionPair,
}

/// Every case the regression battery runs.
pub fn battery() -> Vec<Case> {
    let mut cases = vec![
        Case { name: "order12-s1".into(), pair: two_sections(1) },
        Case { name: "order12-s2".into(), pair: two_sections(2) },
        Case { name: "Z6->Z2".into(), pair: z6_over_z2() },
        Case { name: "S3->Z2-sign".into(), pair: s3_sign() },
        Case { name: "Z2=Z2".into(), pair: RetractionPair::identity(cyclic(2)) },
        Case { name: "S3=S3".into(), pair: RetractionPair::identity(symmetric3()) },
    ];
    for (name, g) in peter_weyl_groups() {
        cases.push(Case { name: format!("{name}->1"), pair: RetractionPair::trivial_subgroup(g) });
    }
    cases
}
