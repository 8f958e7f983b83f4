//! Normal origamis built from a group and a generating pair.
//!
//! Squares are labeled by group elements. The right neighbor of `g` is `g·x`
//! and the upper neighbor is `g·y`.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};
use crate::group::Group;
use crate::perm::{commutator, Perm};

#[derive(Clone, Debug)]
pub struct Origami {
    group: Group,
    x: Perm,
    y: Perm,
}

impl Origami {
    /// Fails unless `x` and `y` are members that generate the group.
    pub fn new(group: Group, x: Perm, y: Perm) -> Result<Origami> {
        if !group.contains(&x) || !group.contains(&y) {
            return Err(Error::NotMember);
        }
        if !group.is_generating_pair(&x, &y)? {
            return Err(Error::NotGeneratingPair);
        }
        Ok(Origami { group, x, y })
    }

    /// The group generated by the pair itself.
    pub fn from_pair(x: Perm, y: Perm) -> Result<Origami> {
        let group = Group::new(vec![x.clone(), y.clone()])?;
        Ok(Origami { group, x, y })
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn x(&self) -> &Perm {
        &self.x
    }

    pub fn y(&self) -> &Perm {
        &self.y
    }

    /// Number of squares.
    pub fn size(&self) -> u128 {
        self.group.order()
    }

    pub fn commutator(&self) -> Perm {
        commutator(&self.x, &self.y)
    }

    pub fn singularity_data(&self) -> SingularityData {
        SingularityData::new(self.size(), self.commutator().order())
    }

    pub fn stratum(&self) -> Stratum {
        self.singularity_data().stratum
    }

    /// Element indices of the right (`x`) and upper (`y`) neighbors of every square.
    pub fn neighbor_tables(&self) -> Result<(Vec<usize>, Vec<usize>)> {
        let els = self.group.elements()?;
        let step = |a: &Perm| -> Vec<usize> {
            els.iter()
                .map(|g| {
                    els.index_of(&g.then(a))
                        .expect("closed under multiplication")
                })
                .collect()
        };
        Ok((step(&self.x), step(&self.y)))
    }

    pub fn cylinder_decomposition(&self, direction: Direction) -> Result<CylinderDecomposition> {
        let (right, up) = self.neighbor_tables()?;
        let next = match direction {
            Direction::Horizontal => right,
            Direction::Vertical => up,
        };
        let mut seen = vec![false; next.len()];
        let mut cylinders = Vec::new();
        for start in 0..next.len() {
            if seen[start] {
                continue;
            }
            let mut squares = Vec::new();
            let mut cur = start;
            while !seen[cur] {
                seen[cur] = true;
                squares.push(cur);
                cur = next[cur];
            }
            cylinders.push(Cylinder {
                circumference: squares.len(),
                squares,
            });
        }
        Ok(CylinderDecomposition {
            direction,
            cylinders,
        })
    }

    pub fn vertex_classes(&self) -> Result<VertexClasses> {
        let (right, up) = self.neighbor_tables()?;
        let n = right.len();
        let mut uf = UnionFind::new(4 * n);
        let slot = |g: usize, c: Corner| 4 * g + c as usize;
        for g in 0..n {
            let (gx, gy) = (right[g], up[g]);
            uf.union(slot(g, Corner::LowerRight), slot(gx, Corner::LowerLeft));
            uf.union(slot(g, Corner::UpperLeft), slot(gy, Corner::LowerLeft));
            uf.union(slot(g, Corner::UpperRight), slot(gx, Corner::UpperLeft));
            uf.union(slot(g, Corner::UpperRight), slot(gy, Corner::LowerRight));
        }
        let mut class_of = vec![usize::MAX; 4 * n];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut root_class = vec![usize::MAX; 4 * n];
        for (s, class) in class_of.iter_mut().enumerate() {
            let r = uf.find(s);
            if root_class[r] == usize::MAX {
                root_class[r] = classes.len();
                classes.push(Vec::new());
            }
            *class = root_class[r];
            classes[root_class[r]].push(s);
        }
        Ok(VertexClasses { class_of, classes })
    }

    /// Apply one of the generators of SL(2,Z).
    pub fn act(&self, gen: Sl2Gen) -> Origami {
        let (x, y) = (&self.x, &self.y);
        let (nx, ny) = match gen {
            Sl2Gen::S => (y.inverse(), x.clone()),
            Sl2Gen::SInv => (y.clone(), x.inverse()),
            Sl2Gen::T => (x.clone(), y.then(&x.inverse())),
            Sl2Gen::TInv => (x.clone(), y.then(x)),
        };
        Origami {
            group: self.group.clone(),
            x: nx,
            y: ny,
        }
    }
}

pub fn sl2_act(gen: Sl2Gen, o: &Origami) -> Origami {
    o.act(gen)
}

/// Whether two origamis over the same realization are equal, i.e. the
/// pair map extends to an automorphism of the group.
pub fn origami_equal(a: &Origami, b: &Origami) -> Result<bool> {
    if !a.group.ptr_eq(&b.group) && !a.group.same_subgroup(&b.group) {
        return Err(Error::DifferentRealizations);
    }
    if (a.x.order(), a.y.order()) != (b.x.order(), b.y.order())
        || a.x.then(&a.y).order() != b.x.then(&b.y).order()
    {
        return Ok(false);
    }
    a.group.extends_to_automorphism((&a.x, &a.y), (&b.x, &b.y))
}

/// Representatives of the SL(2,Z)-orbit in breadth-first order over
/// S, T, S⁻¹, T⁻¹.
pub fn sl2_orbit(o: &Origami, max_size: usize) -> Result<Vec<Origami>> {
    let mut reps = vec![o.clone()];
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for gen in Sl2Gen::ALL {
            let next = reps[i].act(gen);
            let mut known = false;
            for r in &reps {
                if origami_equal(r, &next)? {
                    known = true;
                    break;
                }
            }
            if known {
                continue;
            }
            if reps.len() >= max_size {
                return Err(Error::CapExceeded {
                    what: "orbit size",
                    cap: max_size,
                });
            }
            reps.push(next);
            queue.push_back(reps.len() - 1);
        }
    }
    Ok(reps)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sl2Gen {
    S,
    T,
    SInv,
    TInv,
}

impl Sl2Gen {
    pub const ALL: [Sl2Gen; 4] = [Sl2Gen::S, Sl2Gen::T, Sl2Gen::SInv, Sl2Gen::TInv];
}

/// `H(0)` or `H(count x (multiplicity - 1))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Stratum {
    pub count: u128,
    pub multiplicity: u64,
}

impl Stratum {
    pub fn is_torus(&self) -> bool {
        self.multiplicity == 1
    }
}

impl fmt::Display for Stratum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_torus() {
            f.write_str("H(0)")
        } else {
            write!(f, "H({} x {})", self.count, self.multiplicity - 1)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SingularityData {
    /// Order of `[x,y]`; each singularity has cone angle `2π·multiplicity`.
    pub multiplicity: u64,
    /// Number of singularities, 0 on a torus.
    pub count: u128,
    pub genus: u128,
    pub stratum: Stratum,
}

impl SingularityData {
    pub fn new(squares: u128, multiplicity: u64) -> SingularityData {
        let a = multiplicity as u128;
        let count = if a > 1 { squares / a } else { 0 };
        SingularityData {
            multiplicity,
            count,
            genus: 1 + squares * (a - 1) / (2 * a),
            stratum: Stratum {
                count,
                multiplicity,
            },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Horizontal,
    Vertical,
}

impl Direction {
    pub fn as_str(self) -> &'static str {
        match self {
            Direction::Horizontal => "horizontal",
            Direction::Vertical => "vertical",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cylinder {
    pub circumference: usize,
    /// Element indices, in the order the core curve visits them.
    pub squares: Vec<usize>,
}

/// All cylinders have height 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CylinderDecomposition {
    pub direction: Direction,
    pub cylinders: Vec<Cylinder>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Corner {
    LowerLeft = 0,
    LowerRight = 1,
    UpperLeft = 2,
    UpperRight = 3,
}

impl Corner {
    pub const ALL: [Corner; 4] = [
        Corner::LowerLeft,
        Corner::LowerRight,
        Corner::UpperLeft,
        Corner::UpperRight,
    ];
}

/// Partition of the corner slots `4·square + corner` into surface vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexClasses {
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
}

impl VertexClasses {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Classes ordered by their smallest slot.
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, square: usize, corner: Corner) -> usize {
        self.class_of[4 * square + corner as usize]
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut a: usize) -> usize {
        while self.parent[a] != a {
            self.parent[a] = self.parent[self.parent[a]];
            a = self.parent[a];
        }
        a
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}
