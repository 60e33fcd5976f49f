//! Index bookkeeping for the boundary submanifolds of the real spaces with
//! `k` real points and `l` conjugate pairs.
//!
//! Real points are masks over `[k]`, pairs are masks over `[l]`.

use std::fmt;

use crate::labels::{full_mask, labels_of, popcount, Mask};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RealSubmanifoldIndex {
    /// Two components swapped by the involution (pairs only), `J ⊔ K = [l]`.
    RE { j: Mask, k: Mask },
    /// Two components each preserved by the involution; each side holds real
    /// points and whole pairs.
    RH {
        j_real: Mask,
        j_conj: Mask,
        k_real: Mask,
        k_conj: Mask,
    },
    /// Codimension two, pairs only: a real component holding the pairs `I`
    /// and two swapped components split as `J`, `K`.
    RD2 { i: Mask, j: Mask, k: Mask },
    /// The same configuration with real points present, all on the real
    /// component; `I` may then be empty.
    RDgen { i: Mask, j: Mask, k: Mask },
}

fn disjoint_cover(parts: &[Mask], ground: Mask) -> bool {
    let mut seen: Mask = 0;
    for &p in parts {
        if p & seen != 0 || p & !ground != 0 {
            return false;
        }
        seen |= p;
    }
    seen == ground
}

/// Whether `idx` names a submanifold of the space with `k` real points and
/// `l` conjugate pairs. Malformed data yields `false`.
pub fn validate_real_index(idx: &RealSubmanifoldIndex, k: usize, l: usize) -> bool {
    if k > 128 || l > 128 || k + 2 * l < 3 {
        return false;
    }
    let reals = full_mask(k);
    let pairs = full_mask(l);
    match *idx {
        RealSubmanifoldIndex::RE { j, k: kk } => k == 0 && disjoint_cover(&[j, kk], pairs),
        RealSubmanifoldIndex::RH {
            j_real,
            j_conj,
            k_real,
            k_conj,
        } => {
            disjoint_cover(&[j_real, k_real], reals)
                && disjoint_cover(&[j_conj, k_conj], pairs)
                && popcount(j_real) + 2 * popcount(j_conj) >= 2
                && popcount(k_real) + 2 * popcount(k_conj) >= 2
        }
        RealSubmanifoldIndex::RD2 { i, j, k: kk } => {
            k == 0 && i != 0 && disjoint_cover(&[i, j, kk], pairs) && popcount(j) + popcount(kk) >= 2
        }
        RealSubmanifoldIndex::RDgen { i, j, k: kk } => {
            k >= 1 && disjoint_cover(&[i, j, kk], pairs) && popcount(j) + popcount(kk) >= 2
        }
    }
}

/// Orientability of the real space with `k` real points and `l` pairs.
pub fn is_orientable_space(k: usize, l: usize) -> bool {
    k + 2 * l >= 3 && (k == 0 || k + 2 * l <= 4)
}

struct Block(Mask);

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return f.write_str("∅");
        }
        f.write_str("{")?;
        for (n, l) in labels_of(self.0).enumerate() {
            if n > 0 {
                f.write_str(",")?;
            }
            write!(f, "{l}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Display for RealSubmanifoldIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            RealSubmanifoldIndex::RE { j, k } => write!(f, "RE_{},{}", Block(j), Block(k)),
            RealSubmanifoldIndex::RH {
                j_real,
                j_conj,
                k_real,
                k_conj,
            } => write!(
                f,
                "RH_({},{}),({},{})",
                Block(j_real),
                Block(j_conj),
                Block(k_real),
                Block(k_conj)
            ),
            RealSubmanifoldIndex::RD2 { i, j, k } | RealSubmanifoldIndex::RDgen { i, j, k } => {
                write!(f, "RD_{};{},{}", Block(i), Block(j), Block(k))
            }
        }
    }
}
