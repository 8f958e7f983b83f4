//! Brute-force reference implementations used as oracles.
//!
//! Everything here works on raw image vectors and a full multiplication
//! table, without the library's chains, caches or subgroup machinery.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, VecDeque};

use porigami::Perm;

/// `(a·b)(i) = b(a(i))`, written out pointwise.
pub fn mul(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().map(|&i| b[i as usize]).collect()
}

pub fn inv(a: &[u32]) -> Vec<u32> {
    let mut out = vec![0; a.len()];
    for (i, &j) in a.iter().enumerate() {
        out[j as usize] = i as u32;
    }
    out
}

/// `x^-1 y^-1 x y`.
pub fn comm(x: &[u32], y: &[u32]) -> Vec<u32> {
    mul(&mul(&mul(&inv(x), &inv(y)), x), y)
}

pub fn order_of(a: &[u32]) -> u64 {
    let id: Vec<u32> = (0..a.len() as u32).collect();
    let mut p = a.to_vec();
    let mut k = 1;
    while p != id {
        p = mul(&p, a);
        k += 1;
    }
    k
}

pub fn raw(p: &Perm) -> Vec<u32> {
    p.images().to_vec()
}

/// A finite permutation group stored as its full multiplication table.
pub struct Brute {
    pub elems: Vec<Vec<u32>>,
    pub index: HashMap<Vec<u32>, usize>,
    table: Vec<u32>,
    pub inverse: Vec<usize>,
    pub orders: Vec<u64>,
}

impl Brute {
    pub fn new(gens: &[Perm], degree: usize) -> Brute {
        Brute::bounded(gens, degree, usize::MAX).expect("unbounded")
    }

    /// Gives up once the closure exceeds `cap` elements.
    pub fn bounded(gens: &[Perm], degree: usize, cap: usize) -> Option<Brute> {
        let id: Vec<u32> = (0..degree as u32).collect();
        let gens: Vec<Vec<u32>> = gens.iter().map(raw).collect();
        let mut elems = vec![id.clone()];
        let mut index = HashMap::from([(id, 0usize)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in &gens {
                let h = mul(&elems[i], g);
                if !index.contains_key(&h) {
                    index.insert(h.clone(), elems.len());
                    queue.push_back(elems.len());
                    elems.push(h);
                    if elems.len() > cap {
                        return None;
                    }
                }
            }
        }
        let n = elems.len();
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = index[&mul(&elems[a], &elems[b])] as u32;
            }
        }
        let inverse = (0..n)
            .map(|a| (0..n).find(|&b| table[a * n + b] == 0).unwrap())
            .collect();
        let orders = elems.iter().map(|e| order_of(e)).collect();
        Some(Brute {
            elems,
            index,
            table,
            inverse,
            orders,
        })
    }

    /// Whether `a -> c, b -> d` is a well-defined map along the Cayley graph
    /// of `<a, b>`. For two generating pairs of the same group this means it
    /// extends to an automorphism.
    pub fn extends(&self, (a, b): (usize, usize), (c, d): (usize, usize)) -> bool {
        let n = self.len();
        let mut image = vec![usize::MAX; n];
        image[0] = 0;
        let mut queue = VecDeque::from([0usize]);
        while let Some(w) = queue.pop_front() {
            for (s, t) in [(a, c), (b, d)] {
                let next = self.mul(w, s);
                let target = self.mul(image[w], t);
                if image[next] == usize::MAX {
                    image[next] = target;
                    queue.push_back(next);
                } else if image[next] != target {
                    return false;
                }
            }
        }
        true
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.elems.len() + b] as usize
    }

    pub fn comm(&self, a: usize, b: usize) -> usize {
        let (ai, bi) = (self.inverse[a], self.inverse[b]);
        self.mul(self.mul(self.mul(ai, bi), a), b)
    }

    pub fn pow(&self, a: usize, mut e: u64) -> usize {
        let mut out = 0;
        while e > 0 {
            out = self.mul(out, a);
            e -= 1;
        }
        out
    }

    /// Membership mask of the subgroup generated by `seeds`.
    pub fn closure(&self, seeds: &[usize]) -> Vec<bool> {
        let mut mask = vec![false; self.len()];
        mask[0] = true;
        let mut members = vec![0usize];
        let mut i = 0;
        while i < members.len() {
            let m = members[i];
            for &s in seeds {
                let h = self.mul(m, s);
                if !mask[h] {
                    mask[h] = true;
                    members.push(h);
                }
            }
            i += 1;
        }
        mask
    }

    pub fn generates(&self, a: usize, b: usize) -> bool {
        self.closure(&[a, b]).iter().all(|&m| m)
    }

    /// Subgroup generated by all commutators.
    pub fn derived(&self) -> BTreeSet<usize> {
        let n = self.len();
        let comms: BTreeSet<usize> = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .map(|(a, b)| self.comm(a, b))
            .collect();
        let seeds: Vec<usize> = comms.into_iter().collect();
        mask_to_set(&self.closure(&seeds))
    }

    pub fn is_closed(&self, set: &BTreeSet<usize>) -> bool {
        set.iter()
            .all(|&a| set.iter().all(|&b| set.contains(&self.mul(a, b))))
    }

    /// Products of `p^k`-th powers are `p^k`-th powers, for every `k`, inside `sub`.
    pub fn weakly_power_closed(&self, sub: &BTreeSet<usize>, p: u64) -> bool {
        let mut q = p;
        loop {
            let powers: BTreeSet<usize> = sub.iter().map(|&a| self.pow(a, q)).collect();
            if !self.is_closed(&powers) {
                return false;
            }
            if powers.len() == 1 {
                return true;
            }
            q *= p;
        }
    }

    /// Products of elements of order at most `p^k` have order at most `p^k`, inside `sub`.
    pub fn weakly_order_closed(&self, sub: &BTreeSet<usize>, p: u64) -> bool {
        let max = sub.iter().map(|&a| self.orders[a]).max().unwrap_or(1);
        let mut q = p;
        while q < max {
            let small: BTreeSet<usize> = sub
                .iter()
                .copied()
                .filter(|&a| self.orders[a] <= q)
                .collect();
            if !self.is_closed(&small) {
                return false;
            }
            q *= p;
        }
        true
    }

    /// Commutator orders over all generating pairs.
    pub fn generating_pair_commutator_orders(&self) -> BTreeSet<u64> {
        let n = self.len();
        let mut out = BTreeSet::new();
        for a in 0..n {
            for b in 0..n {
                let c = self.orders[self.comm(a, b)];
                if out.contains(&c) {
                    continue;
                }
                if self.generates(a, b) {
                    out.insert(c);
                }
            }
        }
        out
    }

    pub fn generating_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|&(a, b)| self.generates(a, b))
            .collect()
    }

    pub fn all(&self) -> BTreeSet<usize> {
        (0..self.len()).collect()
    }
}

pub fn mask_to_set(mask: &[bool]) -> BTreeSet<usize> {
    mask.iter()
        .enumerate()
        .filter(|(_, &m)| m)
        .map(|(i, _)| i)
        .collect()
}

/// Number of vertices of the square-tiled surface `(x, y)` on `degree`
/// squares given as deck transformations: corners glued along right and
/// upper neighbors, counted with a plain union-find.
pub fn vertex_count(b: &Brute, x: usize, y: usize) -> usize {
    let n = b.len();
    let mut parent: Vec<usize> = (0..4 * n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    let mut union = |a: usize, c: usize| {
        let (ra, rc) = (find(&mut parent, a), find(&mut parent, c));
        parent[ra] = rc;
    };
    // Corners: 0 lower-left, 1 lower-right, 2 upper-left, 3 upper-right.
    for g in 0..n {
        let r = b.mul(g, x);
        let u = b.mul(g, y);
        union(4 * g + 1, 4 * r);
        union(4 * g + 3, 4 * r + 2);
        union(4 * g + 2, 4 * u);
        union(4 * g + 3, 4 * u + 1);
    }
    (0..4 * n).filter(|&i| find(&mut parent, i) == i).count()
}

/// Genus from the Euler characteristic `V - E + F` with `E = 2F`.
pub fn genus(b: &Brute, x: usize, y: usize) -> usize {
    let v = vertex_count(b, x, y) as i64;
    let f = b.len() as i64;
    ((2 - (v - 2 * f + f)) / 2) as usize
}

pub fn pow_mod(base: u128, mut e: u128, m: u128) -> u128 {
    let mut acc = 1 % m;
    let mut b = base % m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// A named group with its designated generating pair.
pub struct Member {
    pub name: String,
    pub group: porigami::Group,
    pub x: Perm,
    pub y: Perm,
}

/// Family groups with their designated pairs, all of order at most `max_order`.
pub fn family_suite(max_order: u128) -> Vec<Member> {
    use porigami::families::*;
    use porigami::Caps;
    let mut out = Vec::new();
    let mut push = |name: String, (group, x, y): (porigami::Group, Perm, Perm)| {
        if group.order() <= max_order {
            out.push(Member { name, group, x, y });
        }
    };
    for kind in MaximalClass::ALL {
        let first = if kind == MaximalClass::Semidihedral {
            4
        } else {
            3
        };
        for n in first..=9 {
            push(
                format!("{kind} {n}"),
                maximal_class_family(kind, n, Caps::default()).unwrap(),
            );
        }
    }
    for n in 3..=8u32 {
        for k in 0..=n - 2 {
            push(format!("G2({n},{k})"), strata_family(2, n, k).unwrap());
        }
    }
    for p in [3u64, 5] {
        for n in 3..=5u32 {
            for k in 0..n.div_ceil(2) {
                push(format!("G{p}({n},{k})"), strata_family(p, n, k).unwrap());
            }
        }
    }
    for n in 1..=3 {
        push(
            format!("W_{n}"),
            wollmilchsau_group(n, Caps::default()).unwrap(),
        );
    }
    let (g, x, y, _) = counterexample_group(2).unwrap();
    push("H_2".into(), (g, x, y));
    push("S_16 example".into(), power_closed_example().unwrap());
    for (p, l, m, a) in [(2, 3, 1, 5), (3, 2, 1, 4), (5, 2, 1, 6), (2, 2, 2, -1)] {
        push(
            format!("C{p}^{l} x| C{p}^{m} ({a})"),
            semidirect_cyclic(p, l, m, a).unwrap(),
        );
    }
    out
}
