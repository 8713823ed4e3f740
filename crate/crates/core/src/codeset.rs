//! Finite sets of equal-length codewords and their text file format.
//!
//! ```text
//! n=<n> delta=<p>/<q> kind=<autocyclic|packed>
//! <codeword>
//! <codeword>
//! ...
//! ```
//!
//! Codewords are written one per line in textual bit form, ascending as
//! binary integers. Every line, including the header, ends in `\n`.

use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use dashu_int::UBig;
use serde::Serialize;

use crate::codeword::{kernel, Codeword, DistanceThreshold};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CodeKind {
    /// Output of the auto-cyclic construction.
    AutoCyclic,
    /// Output of greedy orbit packing.
    Packed,
}

impl fmt::Display for CodeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CodeKind::AutoCyclic => "autocyclic",
            CodeKind::Packed => "packed",
        })
    }
}

impl FromStr for CodeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "autocyclic" => Ok(CodeKind::AutoCyclic),
            "packed" => Ok(CodeKind::Packed),
            _ => Err(Error::Parse { line: 1, message: format!("unknown kind `{s}`") }),
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
enum Words {
    /// Sorted binary values, for `n <= 64`.
    Narrow(Vec<u64>),
    Wide(Vec<Codeword>),
}

/// A sorted, duplicate-free set of codewords of one length, with the
/// threshold it was built for and a claimed (not trusted) closure flag.
#[derive(Clone, PartialEq, Eq)]
pub struct CodeSet {
    length: usize,
    words: Words,
    delta: Option<DistanceThreshold>,
    kind: Option<CodeKind>,
    cyclic_closed: bool,
}

impl CodeSet {
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidCodeword("length must be at least 1".into()));
        }
        let words = if n <= kernel::MAX_BITS { Words::Narrow(Vec::new()) } else { Words::Wide(Vec::new()) };
        Ok(CodeSet { length: n, words, delta: None, kind: None, cyclic_closed: false })
    }

    pub fn from_words(n: usize, words: impl IntoIterator<Item = Codeword>) -> Result<Self> {
        let mut set = Self::empty(n)?;
        match &mut set.words {
            Words::Narrow(v) => {
                for w in words {
                    if w.len() != n {
                        return Err(Error::LengthMismatch { left: n, right: w.len() });
                    }
                    v.push(w.value().expect("narrow length"));
                }
                v.sort_unstable();
                v.dedup();
            }
            Words::Wide(v) => {
                for w in words {
                    if w.len() != n {
                        return Err(Error::LengthMismatch { left: n, right: w.len() });
                    }
                    v.push(w);
                }
                v.sort_unstable();
                v.dedup();
            }
        }
        Ok(set)
    }

    /// Set of `n`-bit words from their binary values (`n <= 64`).
    pub fn from_values(n: usize, mut values: Vec<u64>) -> Result<Self> {
        if n == 0 || n > kernel::MAX_BITS {
            return Err(Error::InvalidCodeword(format!("from_values needs 1 <= n <= 64, got {n}")));
        }
        if let Some(v) = values.iter().find(|&&v| v & !kernel::mask(n) != 0) {
            return Err(Error::InvalidCodeword(format!("{v} does not fit in {n} bits")));
        }
        values.sort_unstable();
        values.dedup();
        Ok(CodeSet { length: n, words: Words::Narrow(values), delta: None, kind: None, cyclic_closed: false })
    }

    pub fn with_delta(mut self, delta: DistanceThreshold) -> Self {
        self.delta = Some(delta);
        self
    }

    pub fn with_kind(mut self, kind: CodeKind) -> Self {
        self.kind = Some(kind);
        self
    }

    pub fn with_cyclic_closed(mut self, claimed: bool) -> Self {
        self.cyclic_closed = claimed;
        self
    }

    /// Codeword length `n`.
    pub fn length(&self) -> usize {
        self.length
    }

    pub fn len(&self) -> usize {
        match &self.words {
            Words::Narrow(v) => v.len(),
            Words::Wide(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn size(&self) -> UBig {
        UBig::from(self.len())
    }

    pub fn delta(&self) -> Option<DistanceThreshold> {
        self.delta
    }

    pub fn kind(&self) -> Option<CodeKind> {
        self.kind
    }

    pub fn claims_cyclic_closure(&self) -> bool {
        self.cyclic_closed
    }

    /// Sorted binary values when `n <= 64`.
    pub fn values(&self) -> Option<&[u64]> {
        match &self.words {
            Words::Narrow(v) => Some(v),
            Words::Wide(_) => None,
        }
    }

    pub fn contains(&self, w: &Codeword) -> bool {
        if w.len() != self.length {
            return false;
        }
        match &self.words {
            Words::Narrow(v) => v.binary_search(&w.value().expect("narrow length")).is_ok(),
            Words::Wide(v) => v.binary_search(w).is_ok(),
        }
    }

    /// Members in ascending order.
    pub fn iter(&self) -> Box<dyn Iterator<Item = Codeword> + '_> {
        let n = self.length;
        match &self.words {
            Words::Narrow(v) => Box::new(v.iter().map(move |&x| {
                Codeword::from_value(x, n).expect("stored values fit")
            })),
            Words::Wide(v) => Box::new(v.iter().cloned()),
        }
    }

    pub fn to_vec(&self) -> Vec<Codeword> {
        self.iter().collect()
    }

    pub fn is_subset_of(&self, other: &CodeSet) -> bool {
        self.length == other.length && self.iter().all(|w| other.contains(&w))
    }

    /// Renders the set in the code file format. Requires `delta` and `kind`.
    pub fn to_file_string(&self) -> Result<String> {
        let (delta, kind) = match (self.delta, self.kind) {
            (Some(d), Some(k)) => (d, k),
            _ => return Err(Error::domain("a code file needs both delta and kind")),
        };
        let mut out = String::with_capacity((self.length + 1) * (self.len() + 1) + 32);
        out.push_str(&format!("n={} delta={} kind={}\n", self.length, delta, kind));
        for w in self.iter() {
            out.push_str(&w.to_string());
            out.push('\n');
        }
        Ok(out)
    }

    /// Parses the code file format. Members may appear in any order but not
    /// twice. Both kinds claim cyclic closure; the claim is checked by
    /// consumers, not here.
    pub fn parse_file(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines.next().ok_or(Error::Parse { line: 1, message: "empty file".into() })?;
        let perr = |line: usize, message: String| Error::Parse { line, message };
        let toks: Vec<&str> = header.split_whitespace().collect();
        if toks.len() != 3 {
            return Err(perr(1, format!("expected `n=.. delta=.. kind=..`, got `{header}`")));
        }
        let field = |tok: &str, key: &str| -> Result<String> {
            tok.strip_prefix(key)
                .and_then(|t| t.strip_prefix('='))
                .map(str::to_owned)
                .ok_or_else(|| perr(1, format!("expected `{key}=`, got `{tok}`")))
        };
        let n: usize = field(toks[0], "n")?
            .parse()
            .map_err(|_| perr(1, format!("bad length in `{}`", toks[0])))?;
        let dtext = field(toks[1], "delta")?;
        if !dtext.contains('/') {
            return Err(perr(1, format!("delta must be written p/q, got `{dtext}`")));
        }
        let delta: DistanceThreshold = dtext.parse().map_err(|e: Error| perr(1, e.to_string()))?;
        let kind: CodeKind = field(toks[2], "kind")?.parse()?;

        let mut words = Vec::new();
        for (idx, line) in lines.enumerate() {
            let lineno = idx + 2;
            if line.is_empty() {
                return Err(perr(lineno, "blank line".into()));
            }
            let w: Codeword = line.parse().map_err(|e: Error| perr(lineno, e.to_string()))?;
            if w.len() != n {
                return Err(perr(lineno, format!("codeword has length {}, header says {n}", w.len())));
            }
            words.push(w);
        }
        let count = words.len();
        let set = CodeSet::from_words(n, words).map_err(|e| perr(1, e.to_string()))?;
        if set.len() != count {
            return Err(perr(1, format!("{} duplicate codeword(s)", count - set.len())));
        }
        Ok(set.with_delta(delta).with_kind(kind).with_cyclic_closed(true))
    }

    pub fn write_file(&self, path: impl AsRef<Path>) -> std::io::Result<()> {
        let text = self
            .to_file_string()
            .map_err(|e| std::io::Error::new(std::io::ErrorKind::InvalidInput, e.to_string()))?;
        fs::write(path, text)
    }
}

impl fmt::Debug for CodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = f.debug_struct("CodeSet");
        s.field("length", &self.length)
            .field("size", &self.len())
            .field("delta", &self.delta.map(|d| d.to_string()))
            .field("kind", &self.kind)
            .field("cyclic_closed", &self.cyclic_closed);
        if self.len() <= 16 {
            s.field("words", &self.iter().map(|w| w.to_string()).collect::<Vec<_>>());
        }
        s.finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Codeword {
        s.parse().unwrap()
    }

    #[test]
    fn file_format_is_sorted_and_terminated() {
        let set = CodeSet::from_words(5, [w("10000"), w("00001"), w("01000"), w("00001")])
            .unwrap()
            .with_delta("2/5".parse().unwrap())
            .with_kind(CodeKind::AutoCyclic);
        assert_eq!(set.len(), 3);
        assert_eq!(set.to_file_string().unwrap(), "n=5 delta=2/5 kind=autocyclic\n00001\n01000\n10000\n");
    }

    #[test]
    fn parse_round_trips() {
        let text = "n=5 delta=2/5 kind=packed\n00000\n00111\n01110\n";
        let set = CodeSet::parse_file(text).unwrap();
        assert_eq!(set.kind(), Some(CodeKind::Packed));
        assert_eq!(set.len(), 3);
        assert!(set.contains(&w("01110")));
        assert_eq!(set.to_file_string().unwrap(), text);
        let empty = CodeSet::parse_file("n=7 delta=1/4 kind=autocyclic\n").unwrap();
        assert!(empty.is_empty());
    }

    #[test]
    fn parse_rejects_malformed_files() {
        let bad = [
            "",
            "n=5 delta=2/5\n00000\n",
            "n=5 delta=0.4 kind=packed\n",
            "n=5 delta=2/5 kind=linear\n",
            "n=5 delta=2/5 kind=packed\n0000\n",
            "n=5 delta=2/5 kind=packed\n00000\n00000\n",
            "n=5 delta=2/5 kind=packed\n00200\n",
            "n=x delta=2/5 kind=packed\n",
        ];
        for text in bad {
            assert!(CodeSet::parse_file(text).is_err(), "{text:?}");
        }
    }

    #[test]
    fn wide_sets_work_like_narrow_ones() {
        let mut a = Codeword::zeros(70).unwrap();
        a.set(3, true);
        let b = a.shift(1);
        let set = CodeSet::from_words(70, [a.clone(), b.clone()]).unwrap();
        assert!(set.values().is_none());
        assert!(set.contains(&a) && set.contains(&b));
        assert_eq!(set.to_vec(), vec![a, b]);
    }
}
