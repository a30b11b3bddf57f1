use crate::error::{Error, Result};

pub const ADD_SYMBOL: &str = "+";
pub const NEG_SYMBOL: &str = "-";
pub const ZERO_SYMBOL: &str = "0";

/// The operation alphabet of a category of groups with operations.
///
/// Only the extra operations are stored: `binary` lists the symbols of
/// Ω₂ \ {+} and `unary` those of Ω₁ \ {−}. `opposite[k]` is the index of the
/// opposite operation of `binary[k]`, i.e. the symbol ⋆° with a ⋆° b = b ⋆ a.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OpSignature {
    binary: Vec<String>,
    unary: Vec<String>,
    opposite: Vec<usize>,
}

impl OpSignature {
    /// Plain groups: no operations besides the group structure.
    pub fn groups() -> Self {
        OpSignature {
            binary: vec![],
            unary: vec![],
            opposite: vec![],
        }
    }

    /// Rings without unit: a single commutative-paired multiplication `*`.
    pub fn rings() -> Self {
        OpSignature {
            binary: vec!["*".into()],
            unary: vec![],
            opposite: vec![0],
        }
    }

    /// Builds a signature from `(symbol, opposite symbol)` pairs and unary symbols.
    /// A symbol that is its own opposite is listed once as `(s, s)`; a genuine
    /// pair may be listed from either side (or both).
    pub fn new<S: AsRef<str>>(binary_pairs: &[(S, S)], unary: &[S]) -> Result<Self> {
        let mut binary: Vec<String> = Vec::new();
        for (a, b) in binary_pairs {
            for s in [a.as_ref(), b.as_ref()] {
                if !binary.iter().any(|x| x == s) {
                    binary.push(s.to_string());
                }
            }
        }
        let mut opposite = vec![usize::MAX; binary.len()];
        for (a, b) in binary_pairs {
            let ia = binary.iter().position(|x| x == a.as_ref()).unwrap();
            let ib = binary.iter().position(|x| x == b.as_ref()).unwrap();
            for (i, j) in [(ia, ib), (ib, ia)] {
                if opposite[i] != usize::MAX && opposite[i] != j {
                    return Err(Error::Malformed(format!(
                        "operation {} is paired with two different opposites",
                        binary[i]
                    )));
                }
                opposite[i] = j;
            }
        }
        let unary = unary.iter().map(|s| s.as_ref().to_string()).collect();
        Self::from_parts(binary, unary, opposite)
    }

    /// Builds a signature from explicit symbol lists and an opposite-index map.
    pub fn from_parts(binary: Vec<String>, unary: Vec<String>, opposite: Vec<usize>) -> Result<Self> {
        if opposite.len() != binary.len() {
            return Err(Error::Malformed("opposite map does not cover every binary symbol".into()));
        }
        let reserved = [ADD_SYMBOL, NEG_SYMBOL, ZERO_SYMBOL];
        for s in binary.iter().chain(unary.iter()) {
            if s.is_empty() || reserved.contains(&s.as_str()) {
                return Err(Error::Malformed(format!("reserved or empty operation symbol {s:?}")));
            }
        }
        let mut all: Vec<&String> = binary.iter().chain(unary.iter()).collect();
        all.sort();
        if all.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Malformed("duplicate operation symbol".into()));
        }
        for (i, &j) in opposite.iter().enumerate() {
            if j >= binary.len() || opposite[j] != i {
                return Err(Error::Malformed(format!(
                    "opposite pairing is not an involution at {}",
                    binary[i]
                )));
            }
        }
        Ok(OpSignature {
            binary,
            unary,
            opposite,
        })
    }

    /// Symbols of Ω₂′ in table order.
    pub fn binary(&self) -> &[String] {
        &self.binary
    }

    /// Symbols of Ω₁′ in table order.
    pub fn unary(&self) -> &[String] {
        &self.unary
    }

    pub fn opposite(&self, k: usize) -> usize {
        self.opposite[k]
    }

    pub fn opposite_symbol(&self, k: usize) -> &str {
        &self.binary[self.opposite[k]]
    }

    pub fn binary_count(&self) -> usize {
        self.binary.len()
    }

    pub fn unary_count(&self) -> usize {
        self.unary.len()
    }

    /// All of Ω₂ including `+`, in the order `+`, then Ω₂′.
    pub fn binary_symbols(&self) -> impl Iterator<Item = &str> {
        std::iter::once(ADD_SYMBOL).chain(self.binary.iter().map(String::as_str))
    }

    /// All of Ω₁ including `-`.
    pub fn unary_symbols(&self) -> impl Iterator<Item = &str> {
        std::iter::once(NEG_SYMBOL).chain(self.unary.iter().map(String::as_str))
    }

    pub fn binary_index(&self, symbol: &str) -> Option<usize> {
        self.binary.iter().position(|s| s == symbol)
    }

    pub fn unary_index(&self, symbol: &str) -> Option<usize> {
        self.unary.iter().position(|s| s == symbol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairing_is_an_involution() {
        let sig = OpSignature::new(&[("*", "*"), ("<", ">")], &["w"]).unwrap();
        assert_eq!(sig.binary(), &["*", "<", ">"]);
        for k in 0..sig.binary_count() {
            assert_eq!(sig.opposite(sig.opposite(k)), k);
        }
        assert_eq!(sig.opposite_symbol(1), ">");
        assert_eq!(sig.binary_symbols().next(), Some("+"));
        assert_eq!(sig.unary_symbols().collect::<Vec<_>>(), vec!["-", "w"]);
    }

    #[test]
    fn rejects_bad_pairings() {
        assert!(OpSignature::new(&[("*", "<"), ("*", ">")], &[] as &[&str]).is_err());
        assert!(OpSignature::from_parts(vec!["a".into(), "b".into()], vec![], vec![1, 1]).is_err());
        assert!(OpSignature::new(&[("+", "+")], &[] as &[&str]).is_err());
        assert!(OpSignature::new(&[("*", "*")], &["*"]).is_err());
    }
}
