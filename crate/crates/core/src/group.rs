//! Finite permutation groups with lazily built stabilizer chains and
//! element tables.
//!
//! A [`Group`] is a cheap handle (an `Arc`) around its generators and caches.
//! Subgroups are ordinary groups over the same degree; they answer
//! membership through their own chain.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::chain::StabilizerChain;
use crate::error::{Error, Result};
use crate::perm::{commutator, Perm};
use crate::presentation::{coset_realization, todd_coxeter, Presentation};

/// Size limits shared by every exhaustive computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Largest group whose elements may be listed.
    pub elements: usize,
    /// Largest number of live cosets in an enumeration.
    pub cosets: usize,
    /// Largest origami the renderer accepts.
    pub render: usize,
}

impl Default for Caps {
    fn default() -> Caps {
        Caps {
            elements: 1 << 16,
            cosets: 1 << 16,
            render: 1024,
        }
    }
}

impl Caps {
    /// Parse `elem:coset:render`, e.g. `65536:65536:1024`.
    pub fn parse(text: &str) -> Result<Caps> {
        let parts: Vec<&str> = text.trim().split(':').collect();
        if parts.len() != 3 {
            return Err(Error::Input(format!(
                "caps must look like elem:coset:render, got `{text}`"
            )));
        }
        let mut vals = [0usize; 3];
        for (v, part) in vals.iter_mut().zip(&parts) {
            *v =
                part.parse().ok().filter(|&v| v > 0).ok_or_else(|| {
                    Error::Input(format!("cap `{part}` is not a positive integer"))
                })?;
        }
        Ok(Caps {
            elements: vals[0],
            cosets: vals[1],
            render: vals[2],
        })
    }

    /// Defaults, overridden by `PORIGAMI_CAPS` when it is set.
    pub fn from_env() -> Result<Caps> {
        match std::env::var("PORIGAMI_CAPS") {
            Ok(v) => Caps::parse(&v),
            Err(_) => Ok(Caps::default()),
        }
    }
}

/// Every element of a group, indexed in breadth-first order from the
/// identity (index 0) along right multiplication by the generators.
#[derive(Debug)]
pub struct Elements {
    list: Vec<Perm>,
    index: HashMap<Perm, usize>,
}

impl Elements {
    pub fn len(&self) -> usize {
        self.list.len()
    }

    pub fn is_empty(&self) -> bool {
        self.list.is_empty()
    }

    pub fn get(&self, i: usize) -> &Perm {
        &self.list[i]
    }

    pub fn as_slice(&self) -> &[Perm] {
        &self.list
    }

    pub fn index_of(&self, g: &Perm) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Perm> {
        self.list.iter()
    }
}

struct Inner {
    degree: usize,
    generators: Vec<Perm>,
    caps: Caps,
    chain: OnceLock<StabilizerChain>,
    elements: OnceLock<Result<Arc<Elements>>>,
    prime: OnceLock<Result<Option<u64>>>,
    frattini: OnceLock<Result<Group>>,
    derived: OnceLock<Group>,
}

#[derive(Clone)]
pub struct Group {
    inner: Arc<Inner>,
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Group")
            .field("degree", &self.degree())
            .field("generators", &self.inner.generators)
            .finish()
    }
}

impl Group {
    /// Group generated by `gens`; an empty list gives the trivial group of degree 0.
    pub fn new(gens: Vec<Perm>) -> Result<Group> {
        let degree = gens.first().map_or(0, Perm::degree);
        Group::with_degree(degree, gens)
    }

    pub fn with_degree(degree: usize, gens: Vec<Perm>) -> Result<Group> {
        Group::with_caps(degree, gens, Caps::default())
    }

    pub fn with_caps(degree: usize, gens: Vec<Perm>, caps: Caps) -> Result<Group> {
        if let Some(g) = gens.iter().find(|g| g.degree() != degree) {
            return Err(Error::DegreeMismatch {
                left: degree,
                right: g.degree(),
            });
        }
        Ok(Group::from_parts(degree, gens, caps))
    }

    fn from_parts(degree: usize, gens: Vec<Perm>, caps: Caps) -> Group {
        Group {
            inner: Arc::new(Inner {
                degree,
                generators: gens,
                caps,
                chain: OnceLock::new(),
                elements: OnceLock::new(),
                prime: OnceLock::new(),
                frattini: OnceLock::new(),
                derived: OnceLock::new(),
            }),
        }
    }

    fn with_chain(degree: usize, gens: Vec<Perm>, caps: Caps, chain: StabilizerChain) -> Group {
        let g = Group::from_parts(degree, gens, caps);
        let _ = g.inner.chain.set(chain);
        g
    }

    /// Realize a presentation through coset enumeration. Returns the group
    /// together with one permutation per presentation generator.
    pub fn from_presentation(pres: &Presentation, caps: Caps) -> Result<(Group, Vec<Perm>)> {
        let table = todd_coxeter(pres, caps.cosets)?;
        let gens = coset_realization(&table);
        let degree = table.num_cosets();
        let chain = StabilizerChain::regular(degree, &gens);
        Ok((Group::with_chain(degree, gens.clone(), caps, chain), gens))
    }

    pub fn degree(&self) -> usize {
        self.inner.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.inner.generators
    }

    pub fn caps(&self) -> Caps {
        self.inner.caps
    }

    /// Same generators under different caps (caches are not shared).
    pub fn with_new_caps(&self, caps: Caps) -> Group {
        Group::from_parts(self.degree(), self.generators().to_vec(), caps)
    }

    pub fn identity(&self) -> Perm {
        Perm::identity(self.degree())
    }

    /// Handles sharing the same allocation.
    pub fn ptr_eq(&self, other: &Group) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
    }

    pub fn chain(&self) -> &StabilizerChain {
        self.inner
            .chain
            .get_or_init(|| StabilizerChain::new(self.degree(), self.generators()))
    }

    pub fn order(&self) -> u128 {
        self.chain().order()
    }

    pub fn contains(&self, g: &Perm) -> bool {
        self.chain().contains(g)
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generators();
        gens.iter()
            .enumerate()
            .all(|(i, a)| gens[i + 1..].iter().all(|b| a.then(b) == b.then(a)))
    }

    /// Errors unless the order fits the element cap.
    pub fn check_cap(&self) -> Result<usize> {
        let order = self.order();
        let cap = self.caps().elements;
        if order > cap as u128 {
            return Err(Error::CapExceeded {
                what: "element enumeration",
                cap,
            });
        }
        Ok(order as usize)
    }

    /// All elements, listed once and cached.
    pub fn elements(&self) -> Result<Arc<Elements>> {
        self.inner
            .elements
            .get_or_init(|| self.enumerate().map(Arc::new))
            .clone()
    }

    fn enumerate(&self) -> Result<Elements> {
        let order = self.check_cap()?;
        let id = self.identity();
        let mut list = vec![id.clone()];
        let mut index = HashMap::with_capacity(order);
        index.insert(id, 0);
        let mut head = 0;
        while head < list.len() {
            for g in self.generators() {
                let h = list[head].then(g);
                if !index.contains_key(&h) {
                    index.insert(h.clone(), list.len());
                    list.push(h);
                }
            }
            head += 1;
        }
        debug_assert_eq!(list.len(), order);
        Ok(Elements { list, index })
    }

    /// Subgroup generated by `gens`, which must lie in this group.
    pub fn subgroup(&self, gens: Vec<Perm>) -> Result<Group> {
        for g in &gens {
            if g.degree() != self.degree() {
                return Err(Error::DegreeMismatch {
                    left: self.degree(),
                    right: g.degree(),
                });
            }
            if !self.contains(g) {
                return Err(Error::NotMember);
            }
        }
        Ok(Group::from_parts(self.degree(), gens, self.caps()))
    }

    pub fn is_subgroup_of(&self, other: &Group) -> bool {
        self.degree() == other.degree() && self.generators().iter().all(|g| other.contains(g))
    }

    pub fn same_subgroup(&self, other: &Group) -> bool {
        self.order() == other.order() && self.is_subgroup_of(other)
    }

    /// `p` if the order is a power of the prime `p`; `None` for the trivial group.
    pub fn prime(&self) -> Result<Option<u64>> {
        self.inner
            .prime
            .get_or_init(|| match prime_power(self.order())? {
                None => Ok(None),
                Some((p, _)) => Ok(Some(p)),
            })
            .clone()
    }

    fn require_prime(&self) -> Result<Option<u64>> {
        self.prime().map_err(|_| Error::NotPGroup {
            order: self.order(),
        })
    }

    /// Smallest normal subgroup containing `seeds`.
    pub fn normal_closure(&self, seeds: &[Perm]) -> Result<Group> {
        for s in seeds {
            if !self.contains(s) {
                return Err(Error::NotMember);
            }
        }
        let mut chain = StabilizerChain::trivial(self.degree());
        let mut gens = Vec::new();
        let mut queue: VecDeque<Perm> = VecDeque::new();
        for s in seeds {
            if chain.add_generator(s) {
                gens.push(s.clone());
                queue.push_back(s.clone());
            }
        }
        while let Some(h) = queue.pop_front() {
            for g in self.generators() {
                let c = h.conjugate_by(g);
                if chain.add_generator(&c) {
                    gens.push(c.clone());
                    queue.push_back(c);
                }
            }
        }
        Ok(Group::with_chain(self.degree(), gens, self.caps(), chain))
    }

    /// Normal closure of the commutators of generator pairs.
    pub fn derived_subgroup(&self) -> Group {
        self.inner
            .derived
            .get_or_init(|| {
                let gens = self.generators();
                let mut seeds = Vec::new();
                for (i, a) in gens.iter().enumerate() {
                    for b in &gens[i + 1..] {
                        seeds.push(commutator(a, b));
                    }
                }
                self.normal_closure(&seeds)
                    .expect("commutators of generators are members")
            })
            .clone()
    }

    /// Largest element order.
    pub fn exponent(&self) -> Result<u64> {
        Ok(self.elements()?.iter().map(Perm::order).max().unwrap_or(1))
    }

    /// Ω_i: generated by the elements with `g^(p^i) = 1`.
    pub fn omega(&self, i: u32) -> Result<Group> {
        let Some(p) = self.require_prime()? else {
            return Ok(self.trivial_subgroup());
        };
        let q = p.pow(i);
        let els = self.elements()?;
        let gens: Vec<Perm> = els.iter().filter(|g| q % g.order() == 0).cloned().collect();
        Ok(self.reduced_subgroup(gens))
    }

    /// 𝔘^i: generated by the `p^i`-th powers of all elements.
    pub fn agemo(&self, i: u32) -> Result<Group> {
        let Some(p) = self.require_prime()? else {
            return Ok(self.trivial_subgroup());
        };
        let q = p.pow(i) as i64;
        let els = self.elements()?;
        let gens: Vec<Perm> = els.iter().map(|g| g.pow(q)).collect();
        Ok(self.reduced_subgroup(gens))
    }

    pub fn trivial_subgroup(&self) -> Group {
        Group::from_parts(self.degree(), Vec::new(), self.caps())
    }

    /// Subgroup generated by `candidates`, keeping only those that enlarge it.
    fn reduced_subgroup(&self, candidates: Vec<Perm>) -> Group {
        let mut chain = StabilizerChain::trivial(self.degree());
        let mut gens = Vec::new();
        for g in candidates {
            if chain.add_generator(&g) {
                gens.push(g);
            }
        }
        Group::with_chain(self.degree(), gens, self.caps(), chain)
    }

    /// Φ(G) = G'·𝔘¹(G), generated by G' and the p-th powers of the generators.
    pub fn frattini_subgroup(&self) -> Result<Group> {
        self.inner
            .frattini
            .get_or_init(|| {
                let Some(p) = self.require_prime()? else {
                    return Ok(self.trivial_subgroup());
                };
                let derived = self.derived_subgroup();
                let mut candidates = derived.generators().to_vec();
                candidates.extend(self.generators().iter().map(|g| g.pow(p as i64)));
                Ok(self.reduced_subgroup(candidates))
            })
            .clone()
    }

    /// γ_1 = G, γ_{i+1} = [γ_i, G], down to the first repeated term.
    pub fn lower_central_series(&self) -> Result<Vec<Group>> {
        self.check_cap()?;
        let mut series = vec![self.clone()];
        loop {
            let last = series.last().expect("nonempty");
            if last.is_trivial() {
                break;
            }
            let mut seeds = Vec::new();
            for a in last.generators() {
                for b in self.generators() {
                    seeds.push(commutator(a, b));
                }
            }
            let next = self.normal_closure(&seeds)?;
            if next.order() == last.order() {
                break;
            }
            series.push(next);
        }
        Ok(series)
    }

    /// Elements commuting with every generator.
    pub fn center(&self) -> Result<Group> {
        let els = self.elements()?;
        let gens: Vec<Perm> = els
            .iter()
            .filter(|z| self.generators().iter().all(|g| z.then(g) == g.then(z)))
            .cloned()
            .collect();
        Ok(self.reduced_subgroup(gens))
    }

    /// Whether `u` and `v` generate the whole group. For a p-group with
    /// `|G:Φ(G)| = p²` this is a rank test in `G/Φ(G)`; otherwise it
    /// compares orders.
    pub fn is_generating_pair(&self, u: &Perm, v: &Perm) -> Result<bool> {
        if !self.contains(u) || !self.contains(v) {
            return Err(Error::NotMember);
        }
        if let Some(phi) = self.two_generator_frattini() {
            if phi.contains(u) {
                return Ok(false);
            }
            let mut chain = phi.chain().clone();
            chain.add_generator(u);
            return Ok(!chain.contains(v));
        }
        Ok(StabilizerChain::new(self.degree(), &[u.clone(), v.clone()]).order() == self.order())
    }

    /// Φ(G) when G is a p-group with `|G:Φ(G)| = p²`.
    pub(crate) fn two_generator_frattini(&self) -> Option<Group> {
        let p = self.prime().ok()??;
        let phi = self.frattini_subgroup().ok()?;
        (self.order() == phi.order() * (p as u128) * (p as u128)).then_some(phi)
    }

    /// Whether `x1 -> x2, y1 -> y2` extends to an automorphism. Both pairs
    /// must generate the group.
    pub fn extends_to_automorphism(
        &self,
        (x1, y1): (&Perm, &Perm),
        (x2, y2): (&Perm, &Perm),
    ) -> Result<bool> {
        if !self.is_generating_pair(x1, y1)? || !self.is_generating_pair(x2, y2)? {
            return Err(Error::NotGeneratingPair);
        }
        let els = self.elements()?;
        let n = els.len();
        let mut image: Vec<Option<usize>> = vec![None; n];
        image[0] = Some(0);
        let mut queue = VecDeque::from([0usize]);
        let steps = [(x1, x2), (y1, y2)];
        while let Some(g) = queue.pop_front() {
            let fg = image[g].expect("visited");
            for (a, b) in steps {
                let h = els.index_of(&els.get(g).then(a)).expect("closed");
                let fh = els.index_of(&els.get(fg).then(b)).expect("closed");
                match image[h] {
                    None => {
                        image[h] = Some(fh);
                        queue.push_back(h);
                    }
                    Some(prev) if prev != fh => return Ok(false),
                    Some(_) => {}
                }
            }
        }
        let mut hit = vec![false; n];
        for f in image.into_iter().flatten() {
            if std::mem::replace(&mut hit[f], true) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `Some((p, n))` with `order = p^n`, `None` for order 1.
pub fn prime_power(order: u128) -> Result<Option<(u64, u32)>> {
    if order == 1 {
        return Ok(None);
    }
    let mut p = 2u128;
    while p * p <= order && !order.is_multiple_of(p) {
        p += 1;
    }
    if !order.is_multiple_of(p) {
        p = order;
    }
    let mut rest = order;
    let mut n = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        n += 1;
    }
    if rest != 1 {
        return Err(Error::NotPrimePower(order));
    }
    let p = u64::try_from(p).map_err(|_| Error::NotPrimePower(order))?;
    Ok(Some((p, n)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_presentation;

    fn q8() -> (Group, Perm, Perm) {
        let pres = parse_presentation("<i,j | i^4, j^2*i^-2, j^-1*i*j*i>").unwrap();
        let (g, gens) = Group::from_presentation(&pres, Caps::default()).unwrap();
        (g, gens[0].clone(), gens[1].clone())
    }

    fn dihedral(n: u32) -> (Group, Perm, Perm) {
        let text = format!("<r,s | r^{}, s^2, s^-1*r*s*r>", 1u64 << (n - 1));
        let (g, gens) =
            Group::from_presentation(&parse_presentation(&text).unwrap(), Caps::default()).unwrap();
        (g, gens[0].clone(), gens[1].clone())
    }

    /// Closure of an arbitrary set under multiplication.
    fn brute_closure(degree: usize, gens: &[Perm]) -> Vec<Perm> {
        let mut set = std::collections::BTreeSet::from([Perm::identity(degree)]);
        let mut frontier: Vec<Perm> = set.iter().cloned().collect();
        while let Some(a) = frontier.pop() {
            for g in gens {
                let b = &a * g;
                if set.insert(b.clone()) {
                    frontier.push(b);
                }
            }
        }
        set.into_iter().collect()
    }

    #[test]
    fn quaternion_basics() {
        let (g, i, j) = q8();
        assert_eq!(g.order(), 8);
        assert_eq!(g.elements().unwrap().len(), 8);
        assert_eq!(g.exponent().unwrap(), 4);
        assert_eq!(g.derived_subgroup().order(), 2);
        assert_eq!(g.frattini_subgroup().unwrap().order(), 2);
        assert_eq!(g.agemo(1).unwrap().order(), 2);
        assert_eq!(g.omega(2).unwrap().order(), 8);
        assert_eq!(g.center().unwrap().order(), 2);
        assert_eq!(g.lower_central_series().unwrap().len(), 3);
        let minus_one = i.pow(2);
        assert!(g.is_generating_pair(&i, &j).unwrap());
        assert!(!g.is_generating_pair(&i, &minus_one).unwrap());
    }

    #[test]
    fn trivial_and_empty() {
        let g = Group::new(vec![]).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.elements().unwrap().len(), 1);
        assert_eq!(g.prime().unwrap(), None);
        assert_eq!(g.frattini_subgroup().unwrap().order(), 1);
    }

    #[test]
    fn degree_mismatch() {
        let e = Group::new(vec![Perm::identity(3), Perm::identity(4)]).unwrap_err();
        assert_eq!(e, Error::DegreeMismatch { left: 3, right: 4 });
    }

    #[test]
    fn cap_is_reported() {
        let caps = Caps {
            elements: 10,
            ..Caps::default()
        };
        let s4 = Group::with_caps(
            4,
            vec![
                "(1,2)".parse::<Perm>().unwrap().extended(4),
                "(1,2,3,4)".parse().unwrap(),
            ],
            caps,
        )
        .unwrap();
        assert_eq!(s4.order(), 24);
        assert!(s4.elements().unwrap_err().is_cap());
        assert!(s4.exponent().unwrap_err().is_cap());
    }

    #[test]
    fn normal_closures_in_dihedral_groups() {
        let (d8, r, s) = dihedral(3);
        let nc = d8.normal_closure(&[r.pow(2)]).unwrap();
        assert_eq!(nc.order(), 2);
        let (d16, r, s16) = dihedral(4);
        assert!(d16
            .normal_closure(&[commutator(&r, &s16)])
            .unwrap()
            .same_subgroup(&d16.derived_subgroup()));
        assert_eq!(d16.derived_subgroup().order(), 4);
        assert_eq!(d16.lower_central_series().unwrap().len(), 4);
        assert!(d8.normal_closure(&[Perm::identity(8).extended(9)]).is_err());
        let _ = s;
    }

    #[test]
    fn derived_subgroup_matches_all_commutators() {
        let (d16, _, _) = dihedral(4);
        let els = d16.elements().unwrap();
        let comms: Vec<Perm> = els
            .iter()
            .flat_map(|a| els.iter().map(move |b| commutator(a, b)))
            .collect();
        let brute = brute_closure(16, &comms);
        assert_eq!(brute.len() as u128, d16.derived_subgroup().order());
        assert!(brute.iter().all(|g| d16.derived_subgroup().contains(g)));
    }

    #[test]
    fn automorphisms_of_q8() {
        let (g, i, j) = q8();
        let els = g.elements().unwrap();
        let mut count = 0;
        for a in els.iter() {
            for b in els.iter() {
                if g.is_generating_pair(a, b).unwrap() {
                    assert!(g.extends_to_automorphism((&i, &j), (a, b)).unwrap());
                    count += 1;
                }
            }
        }
        assert_eq!(count, 24);
        assert!(g
            .extends_to_automorphism((&i, &i.pow(2)), (&i, &j))
            .is_err());
    }

    #[test]
    fn dihedral_swap_is_not_automorphic() {
        let (d8, r, s) = dihedral(3);
        assert!(!d8.extends_to_automorphism((&r, &s), (&s, &r)).unwrap());
        assert!(d8.extends_to_automorphism((&r, &s), (&r, &s)).unwrap());
        assert!(d8
            .extends_to_automorphism((&r, &s), (&r.inverse(), &(&s * &r)))
            .unwrap());
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(8).unwrap(), Some((2, 3)));
        assert_eq!(prime_power(1).unwrap(), None);
        assert_eq!(prime_power(243).unwrap(), Some((3, 5)));
        assert_eq!(prime_power(7).unwrap(), Some((7, 1)));
        assert_eq!(prime_power(6).unwrap_err(), Error::NotPrimePower(6));
    }

    #[test]
    fn caps_parse() {
        let c = Caps::parse("10:20:30").unwrap();
        assert_eq!((c.elements, c.cosets, c.render), (10, 20, 30));
        assert!(Caps::parse("10:20").is_err());
        assert!(Caps::parse("0:1:1").is_err());
    }
}
