//! Predicates on finite p-groups and the property-(C) decision procedure.

use std::collections::{BTreeSet, HashMap, HashSet};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::group::{prime_power, Elements, Group};
use crate::perm::{commutator, Perm};

/// `(p, n)` with `|G| = p^n`; `p` is `None` for the trivial group.
pub fn p_valuation(g: &Group) -> Result<(Option<u64>, u32)> {
    Ok(match prime_power(g.order())? {
        None => (None, 0),
        Some((p, n)) => (Some(p), n),
    })
}

fn require_p_group(g: &Group) -> Result<Option<u64>> {
    g.prime().map_err(|_| Error::NotPGroup { order: g.order() })
}

/// `G' ⊆ 𝔘¹(G)`, or `G' ⊆ 𝔘²(G)` when `p = 2`.
pub fn is_powerful(g: &Group) -> Result<bool> {
    let Some(p) = require_p_group(g)? else {
        return Ok(true);
    };
    let agemo = g.agemo(if p == 2 { 2 } else { 1 })?;
    Ok(g.derived_subgroup().is_subgroup_of(&agemo))
}

/// Repeatedly replace a set by its p-th powers, starting from all of G,
/// and fail as soon as the set is not a subgroup.
pub fn is_weakly_power_closed(g: &Group) -> Result<bool> {
    let Some(p) = require_p_group(g)? else {
        return Ok(true);
    };
    let els = g.elements()?;
    let mut powers: BTreeSet<usize> = (0..els.len()).collect();
    loop {
        powers = powers
            .iter()
            .map(|&i| index_in(&els, &els.get(i).pow(p as i64)))
            .collect();
        if !is_closed_set(&els, &powers) {
            return Ok(false);
        }
        if powers.len() == 1 {
            return Ok(true);
        }
    }
}

/// For each `p^k < exp(G)`, the elements of order at most `p^k` form a subgroup.
pub fn is_weakly_order_closed(g: &Group) -> Result<bool> {
    let Some(p) = require_p_group(g)? else {
        return Ok(true);
    };
    let els = g.elements()?;
    let orders: Vec<u64> = els.iter().map(Perm::order).collect();
    let exp = orders.iter().copied().max().unwrap_or(1);
    let mut bound = p;
    while bound < exp {
        let set: BTreeSet<usize> = (0..els.len()).filter(|&i| orders[i] <= bound).collect();
        if !is_closed_set(&els, &set) {
            return Ok(false);
        }
        bound *= p;
    }
    Ok(true)
}

/// Whether a set of element indices generates a group of the same size.
fn is_closed_set(els: &Elements, set: &BTreeSet<usize>) -> bool {
    let degree = els.get(0).degree();
    let chain = crate::chain::StabilizerChain::new(
        degree,
        &set.iter().map(|&i| els.get(i).clone()).collect::<Vec<_>>(),
    );
    chain.order() == set.len() as u128
}

/// Hall's criterion: `(g^p h^p)^-1 (gh)^p ∈ 𝔘¹(⟨g,h⟩')` for all `g, h`.
pub fn is_regular(g: &Group, pair_cap: usize) -> Result<bool> {
    let Some(p) = require_p_group(g)? else {
        return Ok(true);
    };
    let order = g.check_cap()?;
    if order
        .checked_mul(order)
        .is_none_or(|pairs| pairs > pair_cap)
    {
        return Err(Error::CapExceeded {
            what: "regularity pair enumeration",
            cap: pair_cap,
        });
    }
    let els = g.elements()?;
    let p = p as i64;
    let mut agemo_cache: HashMap<Vec<Perm>, Group> = HashMap::new();
    for a in els.iter() {
        for b in els.iter() {
            let c = a.pow(p).then(&b.pow(p)).inverse().then(&a.then(b).pow(p));
            if c.is_identity() {
                continue;
            }
            let k = g.subgroup(vec![a.clone(), b.clone()])?;
            let derived = k.derived_subgroup();
            let mut key: Vec<Perm> = derived.elements()?.as_slice().to_vec();
            key.sort_unstable();
            let agemo = match agemo_cache.get(&key) {
                Some(h) => h.clone(),
                None => {
                    let h = derived.agemo(1)?;
                    agemo_cache.insert(key, h.clone());
                    h
                }
            };
            if !agemo.contains(&c) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Nilpotency class and whether it equals `n - 1` for `|G| = p^n`, `n >= 2`.
pub fn nilpotency_class(g: &Group) -> Result<(usize, bool)> {
    let (_, n) = p_valuation(g).map_err(|_| Error::NotPGroup { order: g.order() })?;
    let class = g.lower_central_series()?.len() - 1;
    Ok((class, n >= 2 && class == n as usize - 1))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// x ranges over every element.
    Exhaustive,
    /// x ranges over conjugacy-class representatives.
    ConjugationPruned,
}

impl Strategy {
    pub fn as_str(self) -> &'static str {
        match self {
            Strategy::Exhaustive => "exhaustive",
            Strategy::ConjugationPruned => "conjugation-pruned",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PropertyCOptions {
    pub strategy: Strategy,
    /// Stop once two distinct commutator orders are seen.
    pub early_exit: bool,
    /// Worker threads; `None` or `Some(1)` runs sequentially.
    pub threads: Option<usize>,
}

impl Default for PropertyCOptions {
    fn default() -> Self {
        PropertyCOptions {
            strategy: Strategy::ConjugationPruned,
            early_exit: true,
            threads: None,
        }
    }
}

impl PropertyCOptions {
    pub fn exhaustive() -> Self {
        PropertyCOptions {
            strategy: Strategy::Exhaustive,
            early_exit: false,
            threads: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub x: Perm,
    pub y: Perm,
    /// Element indices in the group's element list.
    pub x_index: usize,
    pub y_index: usize,
    pub commutator_order: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyCReport {
    pub holds: bool,
    pub orders_found: BTreeSet<u64>,
    /// Empty when the property holds; otherwise two pairs with different orders.
    pub witnesses: Vec<Witness>,
    pub pairs_examined: u64,
    pub strategy: Strategy,
}

/// Commutator orders found while scanning `y` for one fixed `x`.
struct XScan {
    x: usize,
    generating: u64,
    /// First occurrence of each order: (position among generating pairs, y, order).
    firsts: Vec<(u64, usize, u64)>,
}

struct PairTester {
    /// Φ as a mask and as an index list, when `|G:Φ| = p²`.
    frattini: Option<(Vec<bool>, Vec<usize>)>,
    p: u64,
    order: u128,
    /// `|G:Φ| = p`: a pair generates iff one entry lies outside Φ.
    cyclic_phi: Option<Vec<bool>>,
}

impl PairTester {
    fn new(g: &Group, els: &Elements) -> Result<PairTester> {
        let Some(p) = require_p_group(g)? else {
            return Ok(PairTester {
                frattini: None,
                p: 1,
                order: 1,
                cyclic_phi: None,
            });
        };
        let phi = g.frattini_subgroup()?;
        let index = g.order() / phi.order();
        let mask = |phi: &Group| -> (Vec<bool>, Vec<usize>) {
            let phi_els = phi.elements().expect("subgroup of an enumerated group");
            let mut mask = vec![false; els.len()];
            let mut list = Vec::with_capacity(phi_els.len());
            for h in phi_els.iter() {
                let i = index_in(els, h);
                mask[i] = true;
                list.push(i);
            }
            (mask, list)
        };
        let pp = p as u128;
        if index == pp * pp {
            Ok(PairTester {
                frattini: Some(mask(&phi)),
                p,
                order: g.order(),
                cyclic_phi: None,
            })
        } else if index == pp {
            Ok(PairTester {
                frattini: None,
                p,
                order: g.order(),
                cyclic_phi: Some(mask(&phi).0),
            })
        } else {
            Err(Error::NotTwoGenerated)
        }
    }

    /// Indices `y` such that `(x, y)` generates, as a mask.
    fn partners(&self, els: &Elements, x: usize) -> Option<Vec<bool>> {
        let n = els.len();
        if self.order == 1 {
            return Some(vec![true; n]);
        }
        if let Some(phi) = &self.cyclic_phi {
            return Some(if phi[x] {
                phi.iter().map(|&b| !b).collect()
            } else {
                vec![true; n]
            });
        }
        let (phi_mask, phi_list) = self.frattini.as_ref().expect("rank two");
        if phi_mask[x] {
            return None;
        }
        // ⟨Φ, x⟩ is the union of the cosets Φ·x^k.
        let mut mask = vec![true; n];
        let xe = els.get(x);
        let mut power = els.get(0).clone();
        for _ in 0..self.p {
            for &h in phi_list {
                mask[index_in(els, &els.get(h).then(&power))] = false;
            }
            power = power.then(xe);
        }
        Some(mask)
    }
}

fn index_in(els: &Elements, g: &Perm) -> usize {
    els.index_of(g).expect("element of the group")
}

fn scan_x(
    els: &Elements,
    tester: &PairTester,
    x: usize,
    reference: Option<u64>,
    stop_early: bool,
) -> XScan {
    let mut scan = XScan {
        x,
        generating: 0,
        firsts: Vec::new(),
    };
    let Some(partners) = tester.partners(els, x) else {
        return scan;
    };
    let xe = els.get(x);
    let mut reference = reference;
    for (y, ok) in partners.into_iter().enumerate() {
        if !ok {
            continue;
        }
        let order = commutator(xe, els.get(y)).order();
        let pos = scan.generating;
        scan.generating += 1;
        if !scan.firsts.iter().any(|f| f.2 == order) {
            scan.firsts.push((pos, y, order));
        }
        let r = *reference.get_or_insert(order);
        if stop_early && order != r {
            break;
        }
    }
    scan
}

/// Accumulates scans in x order exactly as one sequential pass would.
struct Merge {
    early_exit: bool,
    first: Option<(usize, usize, u64)>,
    second: Option<(usize, usize, u64)>,
    orders: BTreeSet<u64>,
    examined: u64,
    done: bool,
}

impl Merge {
    fn push(&mut self, scan: &XScan) {
        if self.done {
            return;
        }
        let Some(&(_, y0, o0)) = scan.firsts.first() else {
            self.examined += scan.generating;
            return;
        };
        let reference = *self.first.get_or_insert((scan.x, y0, o0));
        let differing = scan
            .firsts
            .iter()
            .filter(|f| f.2 != reference.2)
            .min_by_key(|f| f.0);
        self.orders.insert(reference.2);
        match differing {
            Some(&(pos, y, o)) if self.early_exit => {
                self.examined += pos + 1;
                self.orders.insert(o);
                self.second = Some((scan.x, y, o));
                self.done = true;
            }
            _ => {
                self.examined += scan.generating;
                self.orders.extend(scan.firsts.iter().map(|f| f.2));
                if self.second.is_none() {
                    self.second = differing.map(|&(_, y, o)| (scan.x, y, o));
                }
            }
        }
    }
}

/// Conjugacy-class representatives (lowest index per class), ascending.
pub fn class_representatives(g: &Group) -> Result<Vec<usize>> {
    let els = g.elements()?;
    let n = els.len();
    let mut seen = vec![false; n];
    let mut reps = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        reps.push(start);
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for gen in g.generators() {
                let j = index_in(&els, &els.get(i).conjugate_by(gen));
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
    }
    Ok(reps)
}

/// Decide property (C): every generating pair has a commutator of the same order.
pub fn property_c(g: &Group, options: PropertyCOptions) -> Result<PropertyCReport> {
    let els = g.elements()?;
    let tester = PairTester::new(g, &els)?;
    let xs: Vec<usize> = match options.strategy {
        Strategy::Exhaustive => (0..els.len()).collect(),
        Strategy::ConjugationPruned => class_representatives(g)?,
    };
    let mut merge = Merge {
        early_exit: options.early_exit,
        first: None,
        second: None,
        orders: BTreeSet::new(),
        examined: 0,
        done: false,
    };
    match options.threads.filter(|&t| t > 1) {
        None => {
            for &x in &xs {
                let reference = merge.first.map(|f| f.2);
                merge.push(&scan_x(&els, &tester, x, reference, options.early_exit));
                if merge.done {
                    break;
                }
            }
        }
        Some(threads) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .map_err(|e| Error::Input(format!("thread pool: {e}")))?;
            let batch = threads * 4;
            pool.install(|| {
                for chunk in xs.chunks(batch) {
                    let scans: Vec<XScan> = chunk
                        .par_iter()
                        .map(|&x| scan_x(&els, &tester, x, None, false))
                        .collect();
                    for scan in &scans {
                        merge.push(scan);
                    }
                    if merge.done {
                        break;
                    }
                }
            });
        }
    }
    let holds = merge.orders.len() <= 1;
    let witness = |(x, y, o): (usize, usize, u64)| Witness {
        x: els.get(x).clone(),
        y: els.get(y).clone(),
        x_index: x,
        y_index: y,
        commutator_order: o,
    };
    let witnesses = if holds {
        Vec::new()
    } else {
        [merge.first, merge.second]
            .into_iter()
            .flatten()
            .map(witness)
            .collect()
    };
    Ok(PropertyCReport {
        holds,
        orders_found: merge.orders,
        witnesses,
        pairs_examined: merge.examined,
        strategy: options.strategy,
    })
}

/// Default order bound for [`all_subgroups`].
pub const SUBGROUP_ENUMERATION_CAP: usize = 256;

/// Every subgroup of a group of order at most `order_cap`, found bottom-up by
/// adjoining one element at a time. Fails if more than `max_subgroups` turn up.
pub fn all_subgroups(g: &Group, order_cap: usize, max_subgroups: usize) -> Result<Vec<Group>> {
    let order = g.check_cap()?;
    if order > order_cap {
        return Err(Error::CapExceeded {
            what: "subgroup enumeration",
            cap: order_cap,
        });
    }
    let els = g.elements()?;
    let n = els.len();
    let mul: Vec<usize> = (0..n)
        .flat_map(|a| {
            let els = &els;
            (0..n).map(move |b| index_in(els, &els.get(a).then(els.get(b))))
        })
        .collect();
    let closure = |base: &[bool], extra: usize| -> Vec<bool> {
        let mut mask = base.to_vec();
        let mut members: Vec<usize> = (0..n).filter(|&i| mask[i]).collect();
        let mut gens: Vec<usize> = members.clone();
        gens.push(extra);
        if !mask[extra] {
            mask[extra] = true;
            members.push(extra);
        }
        let mut head = 0;
        while head < members.len() {
            let a = members[head];
            head += 1;
            for &b in &gens {
                let c = mul[a * n + b];
                if !mask[c] {
                    mask[c] = true;
                    members.push(c);
                }
            }
        }
        mask
    };
    let mut trivial = vec![false; n];
    trivial[0] = true;
    let mut found: Vec<Vec<bool>> = vec![trivial.clone()];
    let mut seen: HashSet<Vec<bool>> = HashSet::from([trivial]);
    let mut head = 0;
    while head < found.len() {
        let base = found[head].clone();
        head += 1;
        for e in 0..n {
            if base[e] {
                continue;
            }
            let mask = closure(&base, e);
            if seen.insert(mask.clone()) {
                if found.len() >= max_subgroups {
                    return Err(Error::CapExceeded {
                        what: "subgroup count",
                        cap: max_subgroups,
                    });
                }
                found.push(mask);
            }
        }
    }
    found
        .into_iter()
        .map(|mask| {
            let gens: Vec<Perm> = (0..n)
                .filter(|&i| mask[i])
                .map(|i| els.get(i).clone())
                .collect();
            g.subgroup(gens)
        })
        .collect()
}

/// Weak power-closedness of every subgroup (quotient sections are not covered).
pub fn subgroups_weakly_power_closed(
    g: &Group,
    order_cap: usize,
    max_subgroups: usize,
) -> Result<bool> {
    for h in all_subgroups(g, order_cap, max_subgroups)? {
        if !is_weakly_power_closed(&h)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Weak order-closedness of every subgroup (quotient sections are not covered).
pub fn subgroups_weakly_order_closed(
    g: &Group,
    order_cap: usize,
    max_subgroups: usize,
) -> Result<bool> {
    for h in all_subgroups(g, order_cap, max_subgroups)? {
        if !is_weakly_order_closed(&h)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Caps;
    use crate::presentation::parse_presentation;

    fn presented(text: &str) -> Group {
        Group::from_presentation(&parse_presentation(text).unwrap(), Caps::default())
            .unwrap()
            .0
    }

    fn d8() -> Group {
        presented("<r,s | r^4, s^2, s^-1*r*s*r>")
    }

    fn q8() -> Group {
        presented("<i,j | i^4, j^2*i^-2, j^-1*i*j*i>")
    }

    fn abelian(a: u32, b: u32) -> Group {
        presented(&format!("<x,y | x^{a}, y^{b}, x^-1*y^-1*x*y>"))
    }

    #[test]
    fn valuations() {
        assert_eq!(p_valuation(&d8()).unwrap(), (Some(2), 3));
        assert_eq!(
            p_valuation(&Group::new(vec![]).unwrap()).unwrap(),
            (None, 0)
        );
        let s3 = Group::new(vec![
            "(1,2,3)".parse().unwrap(),
            "(1,2)".parse::<Perm>().unwrap().extended(3),
        ])
        .unwrap();
        assert_eq!(p_valuation(&s3).unwrap_err(), Error::NotPrimePower(6));
        assert!(matches!(
            is_powerful(&s3),
            Err(Error::NotPGroup { order: 6 })
        ));
    }

    #[test]
    fn powerful() {
        assert!(is_powerful(&abelian(4, 2)).unwrap());
        assert!(!is_powerful(&d8()).unwrap());
        let g331 = presented("<r,s | r^9, s^3, s^-1*r*s*r^-4>");
        assert_eq!(g331.order(), 27);
        assert!(is_powerful(&g331).unwrap());
    }

    #[test]
    fn closure_predicates() {
        assert!(is_weakly_power_closed(&abelian(8, 1)).unwrap());
        assert!(is_weakly_power_closed(&q8()).unwrap());
        assert!(is_weakly_order_closed(&abelian(2, 2)).unwrap());
        assert!(!is_weakly_order_closed(&d8()).unwrap());
        assert!(is_weakly_order_closed(&q8()).unwrap());
    }

    #[test]
    fn regularity() {
        assert!(is_regular(&abelian(4, 2), 1 << 20).unwrap());
        assert!(!is_regular(&d8(), 1 << 20).unwrap());
        let heis = presented("<a,b | a^3, b^3, (a^-1*b^-1*a*b)^3, a^-1*(a^-1*b^-1*a*b)^-1*a*(a^-1*b^-1*a*b), b^-1*(a^-1*b^-1*a*b)^-1*b*(a^-1*b^-1*a*b)>");
        assert_eq!(heis.order(), 27);
        assert!(is_regular(&heis, 1 << 20).unwrap());
        assert!(is_regular(&d8(), 10).unwrap_err().is_cap());
    }

    #[test]
    fn classes() {
        assert_eq!(nilpotency_class(&q8()).unwrap(), (2, true));
        assert_eq!(nilpotency_class(&abelian(4, 2)).unwrap(), (1, false));
        let d16 = presented("<r,s | r^8, s^2, s^-1*r*s*r>");
        assert_eq!(nilpotency_class(&d16).unwrap(), (3, true));
    }

    #[test]
    fn property_c_small_groups() {
        let report = property_c(&d8(), PropertyCOptions::default()).unwrap();
        assert!(report.holds);
        assert_eq!(report.orders_found, BTreeSet::from([2]));
        assert!(report.witnesses.is_empty());
        let report = property_c(&abelian(4, 2), PropertyCOptions::exhaustive()).unwrap();
        assert!(report.holds);
        assert_eq!(report.orders_found, BTreeSet::from([1]));
        let c8 = abelian(8, 1);
        assert!(property_c(&c8, PropertyCOptions::default()).unwrap().holds);
    }

    #[test]
    fn property_c_rejects_large_rank() {
        let e8 = presented("<a,b,c | a^2, b^2, c^2, (a*b)^2, (a*c)^2, (b*c)^2>");
        assert_eq!(e8.order(), 8);
        assert_eq!(
            property_c(&e8, PropertyCOptions::default()).unwrap_err(),
            Error::NotTwoGenerated
        );
    }

    #[test]
    fn parallel_matches_sequential() {
        let g = presented("<r,s | r^16, s^2, s^-1*r*s*r^7>");
        for early_exit in [true, false] {
            for strategy in [Strategy::Exhaustive, Strategy::ConjugationPruned] {
                let seq = PropertyCOptions {
                    strategy,
                    early_exit,
                    threads: None,
                };
                let par = PropertyCOptions {
                    threads: Some(3),
                    ..seq
                };
                assert_eq!(property_c(&g, seq).unwrap(), property_c(&g, par).unwrap());
            }
        }
    }

    #[test]
    fn subgroup_enumeration() {
        assert_eq!(all_subgroups(&d8(), 256, 1000).unwrap().len(), 10);
        assert_eq!(all_subgroups(&q8(), 256, 1000).unwrap().len(), 6);
        assert!(subgroups_weakly_order_closed(&q8(), 256, 1000).unwrap());
        assert!(!subgroups_weakly_order_closed(&d8(), 256, 1000).unwrap());
        assert!(subgroups_weakly_power_closed(&d8(), 256, 1000).unwrap());
    }
}
