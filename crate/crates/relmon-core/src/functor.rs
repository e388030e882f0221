//! Maps `X -> T` and the action of correspondences on them.
//!
//! A relation `U` on `X` sends `φ` to `Uφ` with `(Uφ)(y) = ⋁_{(y,x) ∈ U} φ(x)`;
//! the empty join is the least element of `T`.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::lattice::{DownsetLattice, GInfo};
use crate::perm::Permutation;
use crate::relation::Relation;

/// Default cap on `|T|^{|X|}` for [`b_enumerate`].
pub const DEFAULT_BUDGET: u64 = 1 << 24;

/// A map from `X = {0, .., nX-1}` to a lattice, as element indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeMap {
    pub values: Vec<usize>,
}

impl LatticeMap {
    pub fn new(values: Vec<usize>) -> Self {
        LatticeMap { values }
    }

    pub fn constant(nx: usize, value: usize) -> Self {
        LatticeMap { values: alloc::vec![value; nx] }
    }

    pub fn nx(&self) -> usize {
        self.values.len()
    }

    fn check(&self, t: &DownsetLattice) -> Result<()> {
        if self.values.iter().any(|&v| v >= t.len()) {
            return Err(Error::InvalidArgument("map value outside the lattice"));
        }
        Ok(())
    }

    /// Whether every irreducible of `t` is a value of the map.
    pub fn covers_irreducibles(&self, t: &DownsetLattice) -> bool {
        t.irreducibles().iter().all(|i| self.values.contains(i))
    }
}

pub fn act(u: &Relation, phi: &LatticeMap, t: &DownsetLattice) -> Result<LatticeMap> {
    if u.len() != phi.nx() {
        return Err(Error::SizeMismatch { left: u.len(), right: phi.nx() });
    }
    phi.check(t)?;
    let values = (0..u.len())
        .map(|y| {
            let row = u.row(y);
            t.join_all((0..phi.nx()).filter(|&x| row >> x & 1 == 1).map(|x| phi.values[x]))
        })
        .collect();
    Ok(LatticeMap { values })
}

/// `π_{T,X}`: keeps `φ` when its image contains every irreducible, `None`
/// stands for zero.
pub fn pi(phi: &LatticeMap, t: &DownsetLattice) -> Option<LatticeMap> {
    phi.covers_irreducibles(t).then(|| phi.clone())
}

/// All `φ : X -> T` with `E ⊆ φ(X) ⊆ G`, in lexicographic order of value
/// arrays.
pub fn b_enumerate(t: &DownsetLattice, g: &GInfo, nx: usize, budget: u64) -> Result<Vec<LatticeMap>> {
    let needed = (t.len() as u128).checked_pow(nx as u32).unwrap_or(u128::MAX);
    if needed > u128::from(budget) {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let mut out = Vec::new();
    if nx < t.e() {
        return Ok(out);
    }
    let members = g.members(t);
    if members.is_empty() {
        return Ok(out);
    }
    let mut digits = alloc::vec![0usize; nx];
    loop {
        let phi = LatticeMap { values: digits.iter().map(|&d| members[d]).collect() };
        if phi.covers_irreducibles(t) {
            out.push(phi);
        }
        // odometer, last position fastest
        let Some(pos) = (0..nx).rev().find(|&p| digits[p] + 1 < members.len()) else {
            break;
        };
        digits[pos] += 1;
        for d in &mut digits[pos + 1..] {
            *d = 0;
        }
    }
    Ok(out)
}

/// Index permutation of `t` induced by `σ`, or an error when `σ` does not
/// map lower ideals to lower ideals.
pub fn lattice_permutation(sigma: &Permutation, t: &DownsetLattice) -> Result<Vec<usize>> {
    if sigma.len() != t.e() {
        return Err(Error::SizeMismatch { left: sigma.len(), right: t.e() });
    }
    t.elements()
        .iter()
        .map(|&m| t.index_of(sigma.apply_mask(m)).ok_or(Error::NotAnAutomorphism))
        .collect()
}

/// The right action `φ·σ = σ⁻¹ ∘ φ`.
pub fn aut_act(phi: &LatticeMap, sigma: &Permutation, t: &DownsetLattice) -> Result<LatticeMap> {
    phi.check(t)?;
    let inv = lattice_permutation(&sigma.inverse(), t)?;
    Ok(LatticeMap { values: phi.values.iter().map(|&v| inv[v]).collect() })
}
