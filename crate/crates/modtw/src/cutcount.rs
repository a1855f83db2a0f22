//! Randomized-counting primitives: weight sampling for isolation, unique
//! extremal-member checks, brute-force enumeration of (homogeneous)
//! consistent cuts, and fixed-modulus `2^b` counters used when counts are
//! only meaningful modulo a power of two.

use crate::graph::{Graph, Partition};
use rand::Rng;

/// Enumeration guard for the cut-counting oracles.
pub const CUT_ENUM_CAP: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IsolationGoal {
    Min,
    Max,
}

/// Uniform weights in `[1, 2*universe]`, one per universe element. With this
/// range a random weighting isolates the extremal member of any fixed set
/// family with probability at least 1/2.
pub fn sample_weights<R: Rng>(rng: &mut R, universe: usize) -> Vec<u64> {
    let hi = 2 * universe as u64;
    (0..universe).map(|_| rng.gen_range(1..=hi)).collect()
}

pub fn set_weight(w: &[u64], set: &[usize]) -> u64 {
    set.iter().map(|&v| w[v]).sum()
}

/// Does `w` give a unique minimum-weight (resp. maximum-weight) member of
/// the family? Empty families are vacuously not isolated.
pub fn isolates(w: &[u64], family: &[Vec<usize>], goal: IsolationGoal) -> bool {
    let mut best: Option<u64> = None;
    let mut count = 0usize;
    for set in family {
        let wt = set_weight(w, set);
        let better = match (best, goal) {
            (None, _) => true,
            (Some(b), IsolationGoal::Min) => wt < b,
            (Some(b), IsolationGoal::Max) => wt > b,
        };
        if better {
            best = Some(wt);
            count = 1;
        } else if best == Some(wt) {
            count += 1;
        }
    }
    count == 1
}

/// Number of consistent cuts of G[x]: assignments of each vertex of `x` to
/// one of two sides such that no induced edge crosses. Brute force over
/// 2^|x| assignments (capped); the value always equals 2^(number of
/// connected components of G[x]).
pub fn count_consistent_cuts(g: &Graph, x: &[usize]) -> u128 {
    assert!(x.len() <= CUT_ENUM_CAP, "cut enumeration capped at {CUT_ENUM_CAP} vertices");
    let edges: Vec<(usize, usize)> = {
        let mut e = Vec::new();
        for (i, &u) in x.iter().enumerate() {
            for (j, &v) in x.iter().enumerate().skip(i + 1) {
                if g.has_edge(u, v) {
                    e.push((i, j));
                }
            }
        }
        e
    };
    let mut total: u128 = 0;
    for side in 0u32..(1 << x.len()) {
        if edges.iter().all(|&(i, j)| (side >> i) & 1 == (side >> j) & 1) {
            total += 1;
        }
    }
    total
}

/// Number of homogeneous consistent cuts of G[x] with respect to a vertex
/// partition: consistent cuts in which every partition block meeting `x` is
/// monochromatic. Brute force over 2^(touched blocks) side assignments
/// (capped); the value always equals 2^(number of connected components of
/// the quotient induced on the touched blocks).
pub fn count_homogeneous_cuts(g: &Graph, part: &Partition, x: &[usize]) -> u128 {
    let touched = part.project(x);
    assert!(touched.len() <= CUT_ENUM_CAP, "cut enumeration capped at {CUT_ENUM_CAP} blocks");
    let in_x = {
        let mut m = vec![false; g.n()];
        for &v in x {
            m[v] = true;
        }
        m
    };
    // Blocks are adjacent (for purposes of cut consistency inside G[x]) iff
    // some x-member of one sees some x-member of the other.
    let t = touched.len();
    let mut cross = Vec::new();
    for i in 0..t {
        for j in i + 1..t {
            let bi = &part.blocks[touched[i]];
            let bj = &part.blocks[touched[j]];
            let adj = bi.iter().filter(|&&u| in_x[u]).any(|&u| {
                bj.iter().filter(|&&v| in_x[v]).any(|&v| g.has_edge(u, v))
            });
            if adj {
                cross.push((i, j));
            }
        }
    }
    let mut total: u128 = 0;
    for side in 0u32..(1 << t) {
        if cross.iter().all(|&(i, j)| (side >> i) & 1 == (side >> j) & 1) {
            total += 1;
        }
    }
    total
}

// ---------------------------------------------------------------------------
// Arithmetic modulo 2^bits with bit counts beyond machine words
// ---------------------------------------------------------------------------

/// An unsigned counter reduced modulo 2^bits, stored as little-endian u64
/// limbs with the top limb masked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModCounter {
    bits: u32,
    limbs: Vec<u64>,
}

impl ModCounter {
    pub fn zero(bits: u32) -> Self {
        assert!(bits >= 1);
        let n = (bits as usize).div_ceil(64);
        ModCounter { bits, limbs: vec![0; n] }
    }

    pub fn from_u128(bits: u32, v: u128) -> Self {
        let mut c = Self::zero(bits);
        c.limbs[0] = v as u64;
        if c.limbs.len() > 1 {
            c.limbs[1] = (v >> 64) as u64;
        }
        c.mask_top();
        c
    }

    /// 2^e mod 2^bits (zero when e >= bits).
    pub fn pow2(bits: u32, e: u32) -> Self {
        let mut c = Self::zero(bits);
        if e < bits {
            c.limbs[e as usize / 64] = 1u64 << (e % 64);
        }
        c
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    fn mask_top(&mut self) {
        let extra = 64 * self.limbs.len() as u32 - self.bits;
        if extra > 0 {
            let last = self.limbs.len() - 1;
            self.limbs[last] &= u64::MAX >> extra;
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        assert_eq!(self.bits, other.bits);
        let mut carry = false;
        for (a, &b) in self.limbs.iter_mut().zip(other.limbs.iter()) {
            let (s1, c1) = a.overflowing_add(b);
            let (s2, c2) = s1.overflowing_add(carry as u64);
            *a = s2;
            carry = c1 || c2;
        }
        self.mask_top();
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.bits, other.bits);
        let n = self.limbs.len();
        let mut out = Self::zero(self.bits);
        for i in 0..n {
            let mut carry: u128 = 0;
            for j in 0..n - i {
                let cur = out.limbs[i + j] as u128
                    + self.limbs[i] as u128 * other.limbs[j] as u128
                    + carry;
                out.limbs[i + j] = cur as u64;
                carry = cur >> 64;
            }
        }
        out.mask_top();
        out
    }

    /// Multiply by 2^t in place.
    pub fn shl_assign(&mut self, t: u32) {
        if t >= self.bits {
            for l in &mut self.limbs {
                *l = 0;
            }
            return;
        }
        let limb_shift = (t / 64) as usize;
        let bit_shift = t % 64;
        let n = self.limbs.len();
        for i in (0..n).rev() {
            let mut v = 0u64;
            if i >= limb_shift {
                v = self.limbs[i - limb_shift] << bit_shift;
                if bit_shift > 0 && i > limb_shift {
                    v |= self.limbs[i - limb_shift - 1] >> (64 - bit_shift);
                }
            }
            self.limbs[i] = v;
        }
        self.mask_top();
    }

    pub fn is_zero(&self) -> bool {
        self.limbs.iter().all(|&l| l == 0)
    }

    /// Little-endian byte dump of the reduced value (for external checking).
    pub fn to_le_bytes(&self) -> Vec<u8> {
        self.limbs.iter().flat_map(|l| l.to_le_bytes()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::connected_components;
    use num_bigint::BigUint;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    g.add_edge(u, v);
                }
            }
        }
        g.finish();
        g
    }

    #[test]
    fn consistent_cuts_are_a_power_of_two_per_component() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..60 {
            let n = rng.gen_range(0..=8);
            let g = random_graph(&mut rng, n, 0.4);
            let x: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.6)).collect();
            let cc = connected_components(&g, Some(&x)).len();
            assert_eq!(count_consistent_cuts(&g, &x), 1u128 << cc);
        }
    }

    #[test]
    fn homogeneous_cuts_match_quotient_components() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for _ in 0..60 {
            // Planted two-level graph: a base graph on b blocks, each block
            // substituted by 1..3 vertices with arbitrary inner edges.
            let b = rng.gen_range(1..=5);
            let base = random_graph(&mut rng, b, 0.5);
            let sizes: Vec<usize> = (0..b).map(|_| rng.gen_range(1..=3)).collect();
            let offset: Vec<usize> = sizes
                .iter()
                .scan(0, |acc, &s| {
                    let o = *acc;
                    *acc += s;
                    Some(o)
                })
                .collect();
            let n: usize = sizes.iter().sum();
            let mut g = Graph::new(n);
            for blk in 0..b {
                for i in 0..sizes[blk] {
                    for j in i + 1..sizes[blk] {
                        if rng.gen_bool(0.5) {
                            g.add_edge(offset[blk] + i, offset[blk] + j);
                        }
                    }
                }
            }
            for (u, v) in base.edges() {
                for i in 0..sizes[u] {
                    for j in 0..sizes[v] {
                        g.add_edge(offset[u] + i, offset[v] + j);
                    }
                }
            }
            g.finish();
            let blocks: Vec<Vec<usize>> =
                (0..b).map(|blk| (0..sizes[blk]).map(|i| offset[blk] + i).collect()).collect();
            let part = Partition::new(blocks, n);
            let x: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.6)).collect();

            let count = count_homogeneous_cuts(&g, &part, &x);
            let touched = part.project(&x);
            let q = crate::graph::quotient(&g, &part);
            let cc = connected_components(&q, Some(&touched)).len();
            assert_eq!(count, 1u128 << cc);
            // With at least two touched blocks, G[x] is connected exactly
            // when the count is not divisible by 4.
            if touched.len() >= 2 {
                assert_eq!(g.is_connected_subset(&x), count % 4 != 0);
            }
        }
    }

    #[test]
    fn isolation_flags_unique_extremes() {
        let w = vec![3, 1, 4, 1];
        let fam = vec![vec![0], vec![1], vec![3]];
        // Min weight 1 attained twice.
        assert!(!isolates(&w, &fam, IsolationGoal::Min));
        assert!(isolates(&w, &fam, IsolationGoal::Max));
        assert!(!isolates(&w, &[], IsolationGoal::Min));
        assert!(isolates(&w, &[vec![0, 2]], IsolationGoal::Min));
    }

    #[test]
    fn isolation_rate_is_at_least_half_empirically() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let universe = 10;
        // A fixed family of 30 random subsets.
        let family: Vec<Vec<usize>> = (0..30)
            .map(|_| (0..universe).filter(|_| rng.gen_bool(0.5)).collect())
            .collect();
        let trials = 1000;
        let mut ok = 0;
        for _ in 0..trials {
            let w = sample_weights(&mut rng, universe);
            if isolates(&w, &family, IsolationGoal::Min) {
                ok += 1;
            }
        }
        assert!(ok as f64 / trials as f64 >= 0.5, "isolation rate {ok}/{trials}");
    }

    fn to_biguint(c: &ModCounter) -> BigUint {
        BigUint::from_bytes_le(&c.to_le_bytes())
    }

    #[test]
    fn mod_counter_matches_bignum_arithmetic() {
        let mut rng = ChaCha8Rng::seed_from_u64(24);
        for _ in 0..200 {
            let bits = rng.gen_range(1..=200u32);
            let modulus = BigUint::from(1u8) << bits;
            let a0: u128 = rng.gen();
            let b0: u128 = rng.gen();
            let mut a = ModCounter::from_u128(bits, a0);
            let b = ModCounter::from_u128(bits, b0);
            let mut ra = BigUint::from(a0) % &modulus;
            let rb = BigUint::from(b0) % &modulus;
            assert_eq!(to_biguint(&a), ra);

            a.add_assign(&b);
            ra = (ra + &rb) % &modulus;
            assert_eq!(to_biguint(&a), ra);

            let m = a.mul(&b);
            let rm = (&ra * &rb) % &modulus;
            assert_eq!(to_biguint(&m), rm);

            let t = rng.gen_range(0..=220u32);
            a.shl_assign(t);
            ra = (ra << t) % &modulus;
            assert_eq!(to_biguint(&a), ra);

            let e = rng.gen_range(0..=220u32);
            let p = ModCounter::pow2(bits, e);
            let rp = (BigUint::from(1u8) << e) % &modulus;
            assert_eq!(to_biguint(&p), rp);
            assert_eq!(p.is_zero(), rp == BigUint::from(0u8));
        }
    }
}
