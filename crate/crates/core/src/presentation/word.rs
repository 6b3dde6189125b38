use std::fmt;

use serde::Serialize;

/// A generator raised to a nonzero power.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Letter {
    pub generator: usize,
    pub exponent: i64,
}

/// A word in the free group, kept freely reduced.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    /// Freely reduces the given letters.
    pub fn new(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            push_reduced(&mut out, l);
        }
        Word(out)
    }

    pub fn from_pairs(pairs: &[(usize, i64)]) -> Self {
        Self::new(pairs.iter().map(|&(generator, exponent)| Letter { generator, exponent }))
    }

    pub fn generator(g: usize) -> Self {
        Self::power(g, 1)
    }

    pub fn power(g: usize, exponent: i64) -> Self {
        Self::new([Letter { generator: g, exponent }])
    }

    /// Product of the generators in the given order.
    pub fn product_of(gens: impl IntoIterator<Item = usize>) -> Self {
        Self::new(gens.into_iter().map(|generator| Letter { generator, exponent: 1 }))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of syllables.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Sum of absolute exponents.
    pub fn length(&self) -> u64 {
        self.0.iter().map(|l| l.exponent.unsigned_abs()).sum()
    }

    pub fn inverse(&self) -> Self {
        Word(self.0.iter().rev().map(|l| Letter { generator: l.generator, exponent: -l.exponent }).collect())
    }

    pub fn mul(&self, other: &Word) -> Self {
        let mut out = self.0.clone();
        for &l in &other.0 {
            push_reduced(&mut out, l);
        }
        Word(out)
    }

    /// `x⁻¹ · self · x`
    pub fn conjugate_by(&self, x: &Word) -> Self {
        x.inverse().mul(self).mul(x)
    }

    /// `[a, b] = a b a⁻¹ b⁻¹`
    pub fn commutator(a: &Word, b: &Word) -> Self {
        a.mul(b).mul(&a.inverse()).mul(&b.inverse())
    }

    /// Already reduced by construction; kept for callers holding raw letter lists.
    pub fn free_reduce(&self) -> Self {
        Self::new(self.0.iter().copied())
    }

    /// Shortest cyclic conjugate obtained by cancelling the ends against each other.
    pub fn cyclically_reduce(&self) -> Self {
        let mut letters = self.0.clone();
        loop {
            if letters.len() < 2 {
                return Word(letters);
            }
            let first = letters[0];
            let last = letters[letters.len() - 1];
            if first.generator != last.generator {
                return Word(letters);
            }
            letters.pop();
            let merged = first.exponent + last.exponent;
            if merged == 0 {
                letters.remove(0);
            } else {
                letters[0].exponent = merged;
            }
        }
    }

    pub fn exponent_sum(&self, g: usize) -> i64 {
        self.0.iter().filter(|l| l.generator == g).map(|l| l.exponent).sum()
    }

    /// Exponent sums of generators `0..n`.
    pub fn exponent_sums(&self, n: usize) -> Vec<i64> {
        let mut out = vec![0; n];
        for l in &self.0 {
            out[l.generator] += l.exponent;
        }
        out
    }

    pub fn mentions(&self, g: usize) -> bool {
        self.0.iter().any(|l| l.generator == g)
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.0.iter().map(|l| l.generator).max()
    }

    /// Replaces every occurrence of generator `g` by `w`.
    pub fn substitute(&self, g: usize, w: &Word) -> Self {
        let mut out = Word::identity();
        for l in &self.0 {
            let piece = if l.generator == g { w.pow(l.exponent) } else { Word(vec![*l]) };
            out = out.mul(&piece);
        }
        out
    }

    pub fn pow(&self, n: i64) -> Self {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        (0..n.unsigned_abs()).fold(Word::identity(), |acc, _| acc.mul(&base))
    }

    /// Renames generators through `f`, dropping letters mapped to `None`.
    pub fn map_generators(&self, f: impl Fn(usize) -> Option<usize>) -> Self {
        Self::new(self.0.iter().filter_map(|l| f(l.generator).map(|g| Letter { generator: g, exponent: l.exponent })))
    }

    pub fn render(&self, labels: &[String]) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        self.0
            .iter()
            .map(|l| {
                let name = labels.get(l.generator).cloned().unwrap_or_else(|| format!("g{}", l.generator));
                if l.exponent == 1 {
                    name
                } else {
                    format!("{name}^{}", l.exponent)
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

fn push_reduced(out: &mut Vec<Letter>, l: Letter) {
    if l.exponent == 0 {
        return;
    }
    match out.last_mut() {
        Some(top) if top.generator == l.generator => {
            top.exponent += l.exponent;
            if top.exponent == 0 {
                out.pop();
            }
        }
        _ => out.push(l),
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&[]))
    }
}
