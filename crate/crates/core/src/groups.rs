//! Finite groups as explicit multiplication tables.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("multiplication table is not {0}x{0}")]
    BadShape(usize),
    #[error("element 0 is not an identity")]
    NoIdentity,
    #[error("element {0} has no inverse")]
    NoInverse(usize),
    #[error("not associative at ({0},{1},{2})")]
    NotAssociative(usize, usize, usize),
    #[error("the generators do not generate the group")]
    NotGenerated,
    #[error("element index {0} out of range")]
    OutOfRange(usize),
    #[error("cannot parse group word {0:?}")]
    BadWord(String),
}

/// A finite group on the elements `0..order`, with `0` the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    inverse: Vec<usize>,
    labels: Vec<String>,
    generators: Vec<usize>,
    generator_names: Vec<String>,
}

impl FiniteGroup {
    /// Builds a group from a full table, checking every group axiom.
    pub fn from_table(
        table: Vec<usize>,
        labels: Vec<String>,
        generators: Vec<usize>,
        generator_names: Vec<String>,
    ) -> Result<Self, GroupError> {
        let n = labels.len();
        if table.len() != n * n || n == 0 {
            return Err(GroupError::BadShape(n));
        }
        if let Some(&bad) = table.iter().chain(&generators).find(|&&x| x >= n) {
            return Err(GroupError::OutOfRange(bad));
        }
        let m = |g: usize, h: usize| table[g * n + h];
        if (0..n).any(|g| m(0, g) != g || m(g, 0) != g) {
            return Err(GroupError::NoIdentity);
        }
        let mut inverse = vec![0; n];
        for g in 0..n {
            inverse[g] = (0..n)
                .find(|&h| m(g, h) == 0 && m(h, g) == 0)
                .ok_or(GroupError::NoInverse(g))?;
        }
        for g in 0..n {
            for h in 0..n {
                for k in 0..n {
                    if m(m(g, h), k) != m(g, m(h, k)) {
                        return Err(GroupError::NotAssociative(g, h, k));
                    }
                }
            }
        }
        let group = FiniteGroup {
            order: n,
            table,
            inverse,
            labels,
            generators,
            generator_names,
        };
        if group.closure(&group.generators).len() != n {
            return Err(GroupError::NotGenerated);
        }
        Ok(group)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn elements(&self) -> core::ops::Range<usize> {
        0..self.order
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.table[g * self.order + h]
    }

    pub fn inv(&self, g: usize) -> usize {
        self.inverse[g]
    }

    pub fn pow(&self, g: usize, k: usize) -> usize {
        (0..k).fold(0, |acc, _| self.mul(acc, g))
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn label(&self, g: usize) -> &str {
        &self.labels[g]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn generator_names(&self) -> &[String] {
        &self.generator_names
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|g| self.elements().all(|h| self.mul(g, h) == self.mul(h, g)))
    }

    /// Sorted elements of the subgroup generated by `gens`.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = BTreeSet::new();
        seen.insert(0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Parses a word such as `s^2t` or `1` over the generator names.
    pub fn parse_word(&self, word: &str) -> Result<usize, GroupError> {
        let bad = || GroupError::BadWord(word.to_string());
        let w = word.trim();
        if w == "1" {
            return Ok(0);
        }
        if w.is_empty() {
            return Err(bad());
        }
        let mut rest = w;
        let mut acc = 0;
        while !rest.is_empty() {
            let (gi, name) = self
                .generator_names
                .iter()
                .enumerate()
                .filter(|(_, name)| rest.starts_with(name.as_str()))
                .max_by_key(|(_, name)| name.len())
                .ok_or_else(bad)?;
            rest = &rest[name.len()..];
            let mut exp = 1usize;
            if let Some(r) = rest.strip_prefix('^') {
                let digits = r.chars().take_while(char::is_ascii_digit).count();
                exp = r[..digits].parse().map_err(|_| bad())?;
                rest = &r[digits..];
            }
            acc = self.mul(acc, self.pow(self.generators[gi], exp));
        }
        Ok(acc)
    }

    /// Normal subgroup generated by squares and commutators.
    pub fn frattini_two(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        for g in self.elements() {
            gens.push(self.mul(g, g));
            for h in self.elements() {
                let c = self.mul(self.mul(g, h), self.mul(self.inv(g), self.inv(h)));
                gens.push(c);
            }
        }
        gens.sort_unstable();
        gens.dedup();
        self.closure(&gens)
    }

    /// Whether the subgroup `h` (sorted elements) is cyclic.
    pub fn is_cyclic_subset(&self, h: &[usize]) -> bool {
        h.iter().any(|&g| self.element_order(g) == h.len())
    }
}

fn cyclic_label(k: usize) -> String {
    match k {
        0 => "1".to_string(),
        1 => "s".to_string(),
        _ => format!("s^{k}"),
    }
}

/// `Cₙ = ⟨σ⟩`; element `k` is `σᵏ`.
pub fn cyclic_group(n: usize) -> FiniteGroup {
    assert!(n >= 1);
    let table = (0..n * n).map(|x| (x / n + x % n) % n).collect();
    let labels = (0..n).map(cyclic_label).collect();
    let generators = if n == 1 { vec![] } else { vec![1] };
    let names = if n == 1 { vec![] } else { vec!["s".to_string()] };
    FiniteGroup::from_table(table, labels, generators, names).expect("valid cyclic table")
}

/// `C₂ × C₂ = ⟨σ, τ⟩`; element `i + 2j` is `σⁱτʲ`.
pub fn klein_group() -> FiniteGroup {
    let table = (0..16).map(|x| (x / 4) ^ (x % 4)).collect();
    let labels = ["1", "s", "t", "st"].iter().map(|s| s.to_string()).collect();
    FiniteGroup::from_table(table, labels, vec![1, 2], vec!["s".into(), "t".into()])
        .expect("valid Klein table")
}

/// `D₂ₙ = ⟨σ, τ | σⁿ, τ², στ = τσ⁻¹⟩`; element `i + n·j` is `σⁱτʲ`.
pub fn dihedral_group(n: usize) -> FiniteGroup {
    assert!(n >= 3);
    let order = 2 * n;
    let mut table = vec![0; order * order];
    for x in 0..order {
        for y in 0..order {
            let (i, j) = (x % n, x / n);
            let (i2, j2) = (y % n, y / n);
            // τʲσ^{i2} = σ^{±i2}τʲ
            let i3 = if j == 0 { (i + i2) % n } else { (i + n - i2) % n };
            table[x * order + y] = i3 + n * ((j + j2) % 2);
        }
    }
    let labels = (0..order)
        .map(|x| {
            let (i, j) = (x % n, x / n);
            match (i, j) {
                (0, 0) => "1".to_string(),
                (0, 1) => "t".to_string(),
                (_, 0) => cyclic_label(i),
                _ => format!("{}t", cyclic_label(i)),
            }
        })
        .collect();
    FiniteGroup::from_table(table, labels, vec![1, n], vec!["s".into(), "t".into()])
        .expect("valid dihedral table")
}

/// The subgroup generated by `gens`, with its elements listed in increasing
/// parent index, and the embedding into `g`.
pub fn subgroup(g: &FiniteGroup, gens: &[usize]) -> Result<(FiniteGroup, Vec<usize>), GroupError> {
    if let Some(&bad) = gens.iter().find(|&&x| x >= g.order()) {
        return Err(GroupError::OutOfRange(bad));
    }
    let elems = g.closure(gens);
    let pos = |x: usize| elems.binary_search(&x).expect("closed");
    let n = elems.len();
    let mut table = vec![0; n * n];
    for (a, &x) in elems.iter().enumerate() {
        for (b, &y) in elems.iter().enumerate() {
            table[a * n + b] = pos(g.mul(x, y));
        }
    }
    let labels = elems.iter().map(|&x| g.label(x).to_string()).collect();
    let mut sub_gens: Vec<usize> = gens.iter().map(|&x| pos(x)).filter(|&x| x != 0).collect();
    sub_gens.dedup();
    let names = sub_gens.iter().map(|&x| g.label(elems[x]).to_string()).collect();
    let h = FiniteGroup::from_table(table, labels, sub_gens, names)?;
    Ok((h, elems))
}

pub fn is_homomorphism(g: &FiniteGroup, h: &FiniteGroup, f: &[usize]) -> bool {
    f.len() == g.order()
        && f.iter().all(|&x| x < h.order())
        && g.elements()
            .all(|x| g.elements().all(|y| f[g.mul(x, y)] == h.mul(f[x], f[y])))
}
