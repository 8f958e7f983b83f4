//! Deterministic Schreier–Sims.
//!
//! Each level stores the strong generators fixing all earlier base points,
//! the orbit of its base point, and a transversal. Transversals are explicit
//! permutations for small degrees and Schreier vectors (back-links into the
//! generator list) above [`EXPLICIT_DEGREE_LIMIT`], where storing one
//! permutation per orbit point would be quadratic in the degree.
//!
//! Base points are always the smallest point moved by the residue that opens
//! a new level, so the chain only depends on the generator order.

use rand::Rng;

use crate::perm::Perm;

pub const EXPLICIT_DEGREE_LIMIT: usize = 1024;

#[derive(Clone, Debug)]
enum Transversal {
    /// `(u, u^-1)` per orbit point.
    Explicit(Vec<Option<(Perm, Perm)>>),
    /// Index of the generator that first reached the point; `u32::MAX` at the base.
    Schreier(Vec<Option<u32>>),
}

#[derive(Clone, Debug)]
struct Level {
    base: usize,
    gens: Vec<Perm>,
    gens_inv: Vec<Perm>,
    orbit: Vec<usize>,
    /// Number of generators already combined with each orbit point.
    processed: Vec<usize>,
    transversal: Transversal,
}

impl Level {
    fn new(degree: usize, base: usize) -> Level {
        let transversal = if degree <= EXPLICIT_DEGREE_LIMIT {
            let mut reps = vec![None; degree];
            reps[base] = Some((Perm::identity(degree), Perm::identity(degree)));
            Transversal::Explicit(reps)
        } else {
            let mut links = vec![None; degree];
            links[base] = Some(u32::MAX);
            Transversal::Schreier(links)
        };
        Level {
            base,
            gens: Vec::new(),
            gens_inv: Vec::new(),
            orbit: vec![base],
            processed: vec![0],
            transversal,
        }
    }

    fn in_orbit(&self, pt: usize) -> bool {
        match &self.transversal {
            Transversal::Explicit(reps) => reps[pt].is_some(),
            Transversal::Schreier(links) => links[pt].is_some(),
        }
    }

    /// Generator indices along the path base -> pt.
    fn path(&self, mut pt: usize) -> Vec<usize> {
        let Transversal::Schreier(links) = &self.transversal else {
            unreachable!()
        };
        let mut path = Vec::new();
        while pt != self.base {
            let k = links[pt].expect("point in orbit") as usize;
            path.push(k);
            pt = self.gens_inv[k].image(pt);
        }
        path.reverse();
        path
    }

    /// `u_pt`, mapping the base to `pt`.
    fn rep(&self, pt: usize) -> Perm {
        match &self.transversal {
            Transversal::Explicit(reps) => reps[pt].as_ref().expect("point in orbit").0.clone(),
            Transversal::Schreier(_) => {
                let mut u = Perm::identity(self.gens[0].degree());
                for k in self.path(pt) {
                    u = u.then(&self.gens[k]);
                }
                u
            }
        }
    }

    /// `h * u_pt^-1`.
    fn strip_by(&self, h: &Perm, pt: usize) -> Perm {
        match &self.transversal {
            Transversal::Explicit(reps) => h.then(&reps[pt].as_ref().expect("point in orbit").1),
            Transversal::Schreier(_) => {
                let mut out = h.clone();
                for k in self.path(pt).into_iter().rev() {
                    out = out.then(&self.gens_inv[k]);
                }
                out
            }
        }
    }

    fn add_orbit_point(&mut self, pt: usize, from: usize, gen: usize) {
        match &mut self.transversal {
            Transversal::Explicit(reps) => {
                let (u_from, _) = reps[from].as_ref().expect("point in orbit");
                let u = u_from.then(&self.gens[gen]);
                let inv = u.inverse();
                reps[pt] = Some((u, inv));
            }
            Transversal::Schreier(links) => links[pt] = Some(gen as u32),
        }
        self.orbit.push(pt);
        self.processed.push(0);
    }
}

/// Base and strong generating set of a permutation group.
#[derive(Clone, Debug)]
pub struct StabilizerChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabilizerChain {
    pub fn trivial(degree: usize) -> StabilizerChain {
        StabilizerChain {
            degree,
            levels: Vec::new(),
        }
    }

    /// Chain for the group generated by `gens`, which must share one degree.
    pub fn new(degree: usize, gens: &[Perm]) -> StabilizerChain {
        let mut chain = StabilizerChain::trivial(degree);
        for g in gens {
            chain.add_generator(g);
        }
        chain
    }

    /// Chain for generators of a regular action (transitive, trivial point
    /// stabilizers), such as a coset table over the trivial subgroup. The
    /// single level has base 0 and no Schreier generators to sift.
    pub fn regular(degree: usize, gens: &[Perm]) -> StabilizerChain {
        let mut chain = StabilizerChain::trivial(degree);
        if degree <= 1 {
            return chain;
        }
        let mut level = Level::new(degree, 0);
        level.gens = gens.to_vec();
        level.gens_inv = gens.iter().map(Perm::inverse).collect();
        let mut a = 0;
        while a < level.orbit.len() {
            let pt = level.orbit[a];
            for s in 0..level.gens.len() {
                let img = level.gens[s].image(pt);
                if !level.in_orbit(img) {
                    level.add_orbit_point(img, pt, s);
                }
            }
            level.processed[a] = level.gens.len();
            a += 1;
        }
        chain.levels.push(level);
        chain
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// 0-based base points.
    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn transversal_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn strong_generators(&self) -> &[Perm] {
        self.levels.first().map_or(&[], |l| &l.gens)
    }

    /// Strong generators fixing the first `level` base points.
    pub fn level_generators(&self, level: usize) -> &[Perm] {
        &self.levels[level].gens
    }

    /// Product of the transversal sizes.
    pub fn order(&self) -> u128 {
        self.levels.iter().fold(1u128, |acc, l| {
            acc.checked_mul(l.orbit.len() as u128)
                .expect("group order overflows u128")
        })
    }

    pub fn contains(&self, g: &Perm) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (residue, _) = self.strip(g, 0);
        residue.is_identity()
    }

    /// Sift `g` starting at `from`; returns the residue and the level where
    /// sifting stopped (`levels.len()` if it went through every level).
    fn strip(&self, g: &Perm, from: usize) -> (Perm, usize) {
        let mut h = g.clone();
        for (i, level) in self.levels.iter().enumerate().skip(from) {
            let pt = h.image(level.base);
            if !level.in_orbit(pt) {
                return (h, i);
            }
            if pt != level.base {
                h = level.strip_by(&h, pt);
            }
        }
        (h, self.levels.len())
    }

    /// Add a generator; returns whether the group grew.
    pub fn add_generator(&mut self, g: &Perm) -> bool {
        assert_eq!(g.degree(), self.degree, "generator degree mismatch");
        let (residue, level) = self.strip(g, 0);
        if residue.is_identity() {
            return false;
        }
        self.add_strong_generator(residue, level);
        true
    }

    fn add_strong_generator(&mut self, h: Perm, level: usize) {
        if level == self.levels.len() {
            let base = h.first_moved().expect("non-identity residue");
            self.levels.push(Level::new(self.degree, base));
        }
        let inv = h.inverse();
        for l in &mut self.levels[..=level] {
            l.gens.push(h.clone());
            l.gens_inv.push(inv.clone());
        }
        for i in (0..=level).rev() {
            self.complete_level(i);
        }
    }

    /// Close the orbit at `i` and sift every pending Schreier generator.
    fn complete_level(&mut self, i: usize) {
        let mut a = 0;
        while a < self.levels[i].orbit.len() {
            while self.levels[i].processed[a] < self.levels[i].gens.len() {
                let level = &mut self.levels[i];
                let s = level.processed[a];
                level.processed[a] += 1;
                let pt = level.orbit[a];
                let img = level.gens[s].image(pt);
                if !level.in_orbit(img) {
                    level.add_orbit_point(img, pt, s);
                    continue;
                }
                let schreier = level.strip_by(&level.rep(pt).then(&level.gens[s]), img);
                if schreier.is_identity() {
                    continue;
                }
                let (residue, lvl) = self.strip(&schreier, i + 1);
                if !residue.is_identity() {
                    self.add_strong_generator(residue, lvl);
                }
            }
            a += 1;
        }
    }

    /// Uniformly random element: one random transversal element per level.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Perm {
        let mut g = Perm::identity(self.degree);
        for level in self.levels.iter().rev() {
            let pt = level.orbit[rng.random_range(0..level.orbit.len())];
            g = g.then(&level.rep(pt));
        }
        g
    }
}
