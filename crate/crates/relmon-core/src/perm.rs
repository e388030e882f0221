use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::relation::MAX_N;

/// A permutation of `{0, .., n-1}`; entry `x` holds the image of `x`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    n: u8,
    images: [u8; MAX_N],
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        assert!(n <= MAX_N, "permutation size {n} exceeds {MAX_N}");
        let mut images = [0u8; MAX_N];
        for (x, slot) in images.iter_mut().enumerate().take(n) {
            *slot = x as u8;
        }
        Permutation { n: n as u8, images }
    }

    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        if n > MAX_N {
            return Err(Error::TooLarge { op: "permutation", size: n, limit: MAX_N });
        }
        let mut seen = 0u32;
        let mut out = [0u8; MAX_N];
        for (x, &y) in images.iter().enumerate() {
            if y >= n || seen & (1 << y) != 0 {
                return Err(Error::InvalidPermutation);
            }
            seen |= 1 << y;
            out[x] = y as u8;
        }
        Ok(Permutation { n: n as u8, images: out })
    }

    /// The transposition of `a` and `b`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut p = Self::identity(n);
        p.images.swap(a, b);
        p
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn images(&self) -> &[u8] {
        &self.images[..self.n as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.images().iter().enumerate().all(|(x, &y)| x == y as usize)
    }

    pub fn inverse(&self) -> Self {
        let mut out = [0u8; MAX_N];
        for x in 0..self.len() {
            out[self.images[x] as usize] = x as u8;
        }
        Permutation { n: self.n, images: out }
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, other: &Permutation) -> Self {
        debug_assert_eq!(self.n, other.n);
        let mut out = [0u8; MAX_N];
        for (x, slot) in out.iter_mut().enumerate().take(self.len()) {
            *slot = self.images[other.images[x] as usize];
        }
        Permutation { n: self.n, images: out }
    }

    /// Image of a subset of `{0, .., n-1}` given as a bitmask.
    pub fn apply_mask(&self, mask: u16) -> u16 {
        let mut out = 0u16;
        let mut m = mask;
        while m != 0 {
            let x = m.trailing_zeros() as usize;
            m &= m - 1;
            out |= 1 << self.images[x];
        }
        out
    }

    /// All `n!` permutations in lexicographic order of their image arrays.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..n).collect();
        loop {
            out.push(Permutation::from_images(&cur).expect("valid"));
            // next lexicographic permutation
            let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
                break;
            };
            let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
        out
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.images()).finish()
    }
}
