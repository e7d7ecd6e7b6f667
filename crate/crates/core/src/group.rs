//! Group oracle and opaque group elements.
//!
//! Solvers in this crate never look inside a group element; they only call
//! the oracle operations `identity`, `mul`, `inv` and `eq`. The oracle
//! offers no hashing or ordering, so callers keep collections of elements
//! as duplicate-free lists with linear-scan membership through [`GroupOracle::eq`].
//!
//! Four concrete groups are provided: the cyclic group `Z_n` (written
//! additively), the bit-vector group `Z_2^m`, the symmetric group `S_n`,
//! and the free group over numbered generators. Free-group elements are
//! kept freely reduced at all times, which makes word equality a plain
//! token comparison.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;

use crate::{Error, Result};

/// Group descriptor: which group, and its size parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupSpec {
    /// `Z_n`, residues 0..n modulo n under addition.
    Cyclic(u64),
    /// `Z_2^m`, length-`m` bit vectors under xor.
    BitVector(usize),
    /// `S_n`, permutations of `{0..n-1}`; `mul(a, b)` applies `a` first.
    Symmetric(usize),
    /// Free group over generators `g1, g2, ...`; `None` leaves the
    /// generator set unbounded.
    Free(Option<u32>),
}

/// A free-group token: generator id (1-based) plus an inversion flag.
pub type Token = (u32, bool);

#[derive(Debug, Clone, PartialEq)]
enum Payload {
    Cyclic { value: u64, modulus: u64 },
    Bits(Vec<bool>),
    Perm(Vec<usize>),
    Word(Vec<Token>),
}

/// An opaque group element. Only the owning oracle can interpret it.
#[derive(Debug, Clone)]
pub struct GroupElement {
    payload: Payload,
}

/// Operation table for one group: identity, multiply, inverse, equality,
/// plus parsing and formatting of the deterministic text encoding.
///
/// Oracles are immutable after construction and cheap to clone; clones of
/// the same oracle share the free-group word-length tracker.
#[derive(Debug, Clone)]
pub struct GroupOracle {
    spec: GroupSpec,
    word_peak: Arc<AtomicUsize>,
}

impl PartialEq for GroupOracle {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
    }
}

impl GroupOracle {
    pub fn cyclic(modulus: u64) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidGroup("cyclic group needs modulus >= 1".into()));
        }
        Ok(Self::from_spec(GroupSpec::Cyclic(modulus)))
    }

    pub fn bitvector(dim: usize) -> Self {
        Self::from_spec(GroupSpec::BitVector(dim))
    }

    pub fn symmetric(degree: usize) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidGroup("symmetric group needs degree >= 1".into()));
        }
        Ok(Self::from_spec(GroupSpec::Symmetric(degree)))
    }

    pub fn free(generators: Option<u32>) -> Self {
        Self::from_spec(GroupSpec::Free(generators))
    }

    pub fn from_spec(spec: GroupSpec) -> Self {
        GroupOracle { spec, word_peak: Arc::new(AtomicUsize::new(0)) }
    }

    pub fn spec(&self) -> GroupSpec {
        self.spec
    }

    /// Longest freely reduced word this oracle (or any clone of it) has
    /// produced so far; 0 for non-free groups.
    pub fn max_word_len(&self) -> usize {
        self.word_peak.load(Ordering::Relaxed)
    }

    pub fn identity(&self) -> GroupElement {
        let payload = match self.spec {
            GroupSpec::Cyclic(n) => Payload::Cyclic { value: 0, modulus: n },
            GroupSpec::BitVector(m) => Payload::Bits(vec![false; m]),
            GroupSpec::Symmetric(n) => Payload::Perm((0..n).collect()),
            GroupSpec::Free(_) => Payload::Word(Vec::new()),
        };
        GroupElement { payload }
    }

    fn owns(&self, a: &GroupElement) -> bool {
        match (&self.spec, &a.payload) {
            (GroupSpec::Cyclic(n), Payload::Cyclic { modulus, .. }) => n == modulus,
            (GroupSpec::BitVector(m), Payload::Bits(bits)) => bits.len() == *m,
            (GroupSpec::Symmetric(n), Payload::Perm(images)) => images.len() == *n,
            (GroupSpec::Free(bound), Payload::Word(tokens)) => match bound {
                Some(b) => tokens.iter().all(|(id, _)| *id >= 1 && id <= b),
                None => tokens.iter().all(|(id, _)| *id >= 1),
            },
            _ => false,
        }
    }

    fn note_word(&self, tokens: &[Token]) {
        self.word_peak.fetch_max(tokens.len(), Ordering::Relaxed);
    }

    /// Group product `a · b`. Free-group results are freely reduced.
    pub fn mul(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        if !self.owns(a) || !self.owns(b) {
            return Err(Error::MixedOracle);
        }
        let payload = match (&a.payload, &b.payload) {
            (Payload::Cyclic { value: x, modulus: n }, Payload::Cyclic { value: y, .. }) => {
                Payload::Cyclic { value: (x + y) % n, modulus: *n }
            }
            (Payload::Bits(x), Payload::Bits(y)) => {
                Payload::Bits(x.iter().zip(y).map(|(p, q)| p ^ q).collect())
            }
            // Apply a, then b: (a·b)(i) = b[a[i]].
            (Payload::Perm(p), Payload::Perm(q)) => Payload::Perm(p.iter().map(|&i| q[i]).collect()),
            (Payload::Word(x), Payload::Word(y)) => {
                let mut out = x.clone();
                for &t in y {
                    push_reduced(&mut out, t);
                }
                self.note_word(&out);
                Payload::Word(out)
            }
            _ => unreachable!("owns() checked both payloads"),
        };
        Ok(GroupElement { payload })
    }

    /// Inverse of `a`, so that `mul(a, inv(a))` equals the identity.
    pub fn inv(&self, a: &GroupElement) -> Result<GroupElement> {
        if !self.owns(a) {
            return Err(Error::MixedOracle);
        }
        let payload = match &a.payload {
            Payload::Cyclic { value, modulus } => {
                Payload::Cyclic { value: (modulus - value) % modulus, modulus: *modulus }
            }
            Payload::Bits(bits) => Payload::Bits(bits.clone()),
            Payload::Perm(images) => {
                let mut inv = vec![0; images.len()];
                for (i, &img) in images.iter().enumerate() {
                    inv[img] = i;
                }
                Payload::Perm(inv)
            }
            Payload::Word(tokens) => {
                let out: Vec<Token> = tokens.iter().rev().map(|&(id, neg)| (id, !neg)).collect();
                self.note_word(&out);
                Payload::Word(out)
            }
        };
        Ok(GroupElement { payload })
    }

    /// Element equality. Payloads are canonical (residues reduced, words
    /// freely reduced), so this is structural comparison; elements of
    /// different groups are never equal.
    pub fn eq(&self, a: &GroupElement, b: &GroupElement) -> bool {
        a.payload == b.payload
    }

    pub fn is_identity(&self, a: &GroupElement) -> bool {
        self.eq(a, &self.identity())
    }

    /// Freely reduce a token word into an element of a free-group oracle.
    pub fn free_reduce(&self, tokens: &[Token]) -> Result<GroupElement> {
        let bound = match self.spec {
            GroupSpec::Free(bound) => bound,
            _ => return Err(Error::InvalidElement("free_reduce needs a free-group oracle".into())),
        };
        for &(id, _) in tokens {
            if id == 0 || bound.is_some_and(|b| id > b) {
                return Err(Error::UnknownGenerator(id));
            }
        }
        let mut out = Vec::with_capacity(tokens.len());
        for &t in tokens {
            push_reduced(&mut out, t);
        }
        self.note_word(&out);
        Ok(GroupElement { payload: Payload::Word(out) })
    }

    /// Residue element of a cyclic oracle; the value is reduced modulo n.
    pub fn residue(&self, value: u64) -> Result<GroupElement> {
        match self.spec {
            GroupSpec::Cyclic(n) => {
                Ok(GroupElement { payload: Payload::Cyclic { value: value % n, modulus: n } })
            }
            _ => Err(Error::InvalidElement("residue needs a cyclic oracle".into())),
        }
    }

    pub fn bits(&self, bits: &[bool]) -> Result<GroupElement> {
        match self.spec {
            GroupSpec::BitVector(m) if bits.len() == m => {
                Ok(GroupElement { payload: Payload::Bits(bits.to_vec()) })
            }
            GroupSpec::BitVector(m) => {
                Err(Error::InvalidElement(format!("expected {m} bits, got {}", bits.len())))
            }
            _ => Err(Error::InvalidElement("bits needs a bit-vector oracle".into())),
        }
    }

    /// `i`-th standard basis vector of a bit-vector oracle.
    pub fn basis(&self, i: usize) -> Result<GroupElement> {
        match self.spec {
            GroupSpec::BitVector(m) if i < m => {
                let mut bits = vec![false; m];
                bits[i] = true;
                Ok(GroupElement { payload: Payload::Bits(bits) })
            }
            GroupSpec::BitVector(m) => {
                Err(Error::InvalidElement(format!("basis index {i} out of range for Z_2^{m}")))
            }
            _ => Err(Error::InvalidElement("basis needs a bit-vector oracle".into())),
        }
    }

    /// Permutation element from its image list.
    pub fn permutation(&self, images: &[usize]) -> Result<GroupElement> {
        let n = match self.spec {
            GroupSpec::Symmetric(n) => n,
            _ => return Err(Error::InvalidElement("permutation needs a symmetric oracle".into())),
        };
        if images.len() != n {
            return Err(Error::InvalidElement(format!("expected {n} images, got {}", images.len())));
        }
        let mut seen = vec![false; n];
        for &img in images {
            if img >= n || seen[img] {
                return Err(Error::InvalidElement(format!("images {images:?} are not a bijection")));
            }
            seen[img] = true;
        }
        Ok(GroupElement { payload: Payload::Perm(images.to_vec()) })
    }

    /// Single generator of a free-group oracle (ids are 1-based).
    pub fn generator(&self, id: u32) -> Result<GroupElement> {
        self.free_reduce(&[(id, false)])
    }

    /// Parse the deterministic text encoding of one element, as used in
    /// instance files. Inverse of [`GroupOracle::format_element`].
    pub fn parse_element(&self, text: &str) -> Result<GroupElement> {
        let tokens: Vec<&str> = text.split_whitespace().collect();
        let bad = || Error::InvalidElement(format!("cannot parse {text:?} for {:?}", self.spec));
        match self.spec {
            GroupSpec::Cyclic(n) => {
                let [tok] = tokens[..] else { return Err(bad()) };
                let value: u64 = tok.parse().map_err(|_| bad())?;
                if value >= n {
                    return Err(bad());
                }
                self.residue(value)
            }
            GroupSpec::BitVector(m) => {
                let [tok] = tokens[..] else { return Err(bad()) };
                if m == 0 {
                    return if tok == "e" { Ok(self.identity()) } else { Err(bad()) };
                }
                if tok.len() != m {
                    return Err(bad());
                }
                let mut bits = Vec::with_capacity(m);
                for c in tok.chars() {
                    match c {
                        '0' => bits.push(false),
                        '1' => bits.push(true),
                        _ => return Err(bad()),
                    }
                }
                self.bits(&bits)
            }
            GroupSpec::Symmetric(n) => {
                if tokens.len() != n {
                    return Err(bad());
                }
                let mut images = Vec::with_capacity(n);
                for tok in &tokens {
                    images.push(tok.parse::<usize>().map_err(|_| bad())?);
                }
                self.permutation(&images)
            }
            GroupSpec::Free(_) => {
                if tokens == ["e"] {
                    return Ok(self.identity());
                }
                if tokens.is_empty() {
                    return Err(bad());
                }
                let mut word = Vec::with_capacity(tokens.len());
                for tok in &tokens {
                    let (body, neg) = match tok.strip_suffix('^') {
                        Some(body) => (body, true),
                        None => (tok as &str, false),
                    };
                    let id: u32 = match body.strip_prefix('g') {
                        Some(digits) if !digits.is_empty() => digits.parse().map_err(|_| bad())?,
                        _ => return Err(bad()),
                    };
                    word.push((id, neg));
                }
                self.free_reduce(&word)
            }
        }
    }

    /// Deterministic text encoding: cyclic as a decimal residue, bit
    /// vectors as a 0/1 string (`e` when the dimension is 0), permutations
    /// as a space-separated image list, free words as `gN` / `gN^` tokens
    /// with `e` for the empty word.
    pub fn format_element(&self, a: &GroupElement) -> String {
        debug_assert!(self.owns(a));
        match &a.payload {
            Payload::Cyclic { value, .. } => value.to_string(),
            Payload::Bits(bits) => {
                if bits.is_empty() {
                    "e".to_string()
                } else {
                    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
                }
            }
            Payload::Perm(images) => {
                images.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" ")
            }
            Payload::Word(tokens) => {
                if tokens.is_empty() {
                    "e".to_string()
                } else {
                    tokens
                        .iter()
                        .map(|&(id, neg)| if neg { format!("g{id}^") } else { format!("g{id}") })
                        .collect::<Vec<_>>()
                        .join(" ")
                }
            }
        }
    }
}

fn push_reduced(word: &mut Vec<Token>, t: Token) {
    match word.last() {
        Some(&(id, neg)) if id == t.0 && neg != t.1 => {
            word.pop();
        }
        _ => word.push(t),
    }
}
