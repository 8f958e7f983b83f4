//! Explicit groups and generating pairs: metacyclic strata families, the
//! 2-groups of maximal class, Wollmilchsau groups, Sylow subgroups of
//! symmetric groups, counterexamples to property (C), towers, and the
//! random searches.

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::group::{Caps, Group};
use crate::origami::SingularityData;
use crate::origami::Stratum;
use crate::perm::{commutator, gcd, Perm};
use crate::presentation::parse_presentation;
use crate::props::is_weakly_power_closed;

fn is_prime(p: u64) -> bool {
    p >= 2
        && (2..)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::Range(format!("{p} is not prime")))
    }
}

fn checked_pow(p: u64, e: u32) -> Result<u64> {
    p.checked_pow(e)
        .ok_or_else(|| Error::Range(format!("{p}^{e} is too large")))
}

/// `a^e mod m`.
fn pow_mod(a: u64, mut e: u64, m: u64) -> u64 {
    let m = m as u128;
    let mut base = a as u128 % m;
    let mut acc = 1 % m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    acc as u64
}

fn residue(a: i64, m: u64) -> u64 {
    a.rem_euclid(m as i64) as u64
}

/// `C_{p^l} ⋊ C_{p^m}` with `s^-1 r s = r^a`, acting on `p^l + p^m` points.
/// Returns `(G, r, s)`.
pub fn semidirect_cyclic(p: u64, l: u32, m: u32, a: i64) -> Result<(Group, Perm, Perm)> {
    require_prime(p)?;
    let na = checked_pow(p, l)?;
    let nb = checked_pow(p, m)?;
    let degree = (na + nb) as usize;
    if degree > 1 << 20 {
        return Err(Error::Range(format!("degree {degree} is too large")));
    }
    let a = residue(a, na);
    if gcd(a, p) != 1 && na > 1 {
        return Err(Error::InvalidTwist(format!(
            "{a} is not a unit modulo {na}"
        )));
    }
    if pow_mod(a, nb, na) != 1 % na {
        return Err(Error::InvalidTwist(format!(
            "{a}^{nb} is not 1 modulo {na}"
        )));
    }
    let (na, nb) = (na as usize, nb as usize);
    let mut r = Vec::with_capacity(degree);
    let mut s = Vec::with_capacity(degree);
    for i in 0..na {
        r.push((i + 1) % na);
        s.push((i as u64 * a % na as u64) as usize);
    }
    for j in 0..nb {
        r.push(na + j);
        s.push(na + (j + 1) % nb);
    }
    let r = Perm::from_images(r)?;
    let s = Perm::from_images(s)?;
    let g = Group::new(vec![r.clone(), s.clone()])?;
    Ok((g, r, s))
}

/// The metacyclic groups realizing the strata of p-origamis: order `p^n`,
/// with `[r,s]` of order `p^k`.
pub fn strata_family(p: u64, n: u32, k: u32) -> Result<(Group, Perm, Perm)> {
    require_prime(p)?;
    let a = if p == 2 {
        if n < 2 || k > n - 2 {
            return Err(Error::Range(format!(
                "need 0 <= k <= n-2, got n={n}, k={k}"
            )));
        }
        -1
    } else {
        if 2 * k >= n {
            return Err(Error::Range(format!("need 0 <= k < n/2, got n={n}, k={k}")));
        }
        p as i64 + 1
    };
    semidirect_cyclic(p, k + 1, n - k - 1, a)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MaximalClass {
    Dihedral,
    Quaternion,
    Semidihedral,
}

impl MaximalClass {
    pub const ALL: [MaximalClass; 3] = [
        MaximalClass::Dihedral,
        MaximalClass::Quaternion,
        MaximalClass::Semidihedral,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MaximalClass::Dihedral => "dihedral",
            MaximalClass::Quaternion => "quaternion",
            MaximalClass::Semidihedral => "semidihedral",
        }
    }

    /// Presentation on `r, s` of the group of order `2^n`.
    pub fn presentation(self, n: u32) -> String {
        let half = 1u64 << (n - 1);
        let quarter = 1u64 << (n - 2);
        match self {
            MaximalClass::Dihedral => format!("<r,s | r^{half}, s^2, s^-1*r*s*r>"),
            MaximalClass::Quaternion => format!("<r,s | r^{half}, s^2*r^-{quarter}, s^-1*r*s*r>"),
            MaximalClass::Semidihedral => {
                format!("<r,s | r^{half}, s^2, s^-1*r*s*r^-{}>", quarter - 1)
            }
        }
    }
}

impl fmt::Display for MaximalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Dihedral, generalized quaternion or semidihedral group of order `2^n`,
/// realized by coset enumeration. Returns `(G, r, s)`.
pub fn maximal_class_family(kind: MaximalClass, n: u32, caps: Caps) -> Result<(Group, Perm, Perm)> {
    if !(3..=40).contains(&n) {
        return Err(Error::Range(format!("need n >= 3, got {n}")));
    }
    if kind == MaximalClass::Semidihedral && n < 4 {
        return Err(Error::Range("semidihedral groups need n >= 4".into()));
    }
    presented_pair(&kind.presentation(n), caps)
}

fn presented_pair(text: &str, caps: Caps) -> Result<(Group, Perm, Perm)> {
    let pres = parse_presentation(text)?;
    let (g, gens) = Group::from_presentation(&pres, caps)?;
    Ok((g, gens[0].clone(), gens[1].clone()))
}

/// `W_n = <x,y | x^(2^(n+1)), y^(2^(n+1)), x^(2^n) y^(2^n), x^-1 y x = y^-1>`,
/// of order `2^(2n+1)`. Returns `(W_n, x, y)`.
pub fn wollmilchsau_group(n: u32, caps: Caps) -> Result<(Group, Perm, Perm)> {
    if !(1..=30).contains(&n) {
        return Err(Error::Range(format!("need n >= 1, got {n}")));
    }
    let big = 1u64 << (n + 1);
    let half = 1u64 << n;
    presented_pair(
        &format!("<x,y | x^{big}, y^{big}, x^{half}*y^{half}, x^-1*y*x*y>"),
        caps,
    )
}

/// `Q_8` on `i, j`, the deck group of the Eierlegende Wollmilchsau.
pub fn quaternion_pair(caps: Caps) -> Result<(Group, Perm, Perm)> {
    presented_pair("<i,j | i^4, j^2*i^-2, j^-1*i*j*i>", caps)
}

/// `e_{i,j}` on `p^r` points: disjoint p-cycles
/// `(k, k+p^(r-i), ..., k+p^(r-i)(p-1))` for
/// `p^(r+1-i)(j-1) < k <= p^(r+1-i)(j-1) + p^(r-i)`.
pub fn sylow_wreath_generator(p: u64, r: u32, i: u32, j: u64) -> Result<Perm> {
    require_prime(p)?;
    if i < 1 || i > r {
        return Err(Error::Range(format!("need 1 <= i <= {r}, got {i}")));
    }
    let level = checked_pow(p, i - 1)?;
    if j < 1 || j > level {
        return Err(Error::Range(format!("need 1 <= j <= {level}, got {j}")));
    }
    let degree = checked_pow(p, r)? as usize;
    let step = checked_pow(p, r - i)?;
    let block = step * p;
    let start = block * (j - 1) + 1;
    let cycles: Vec<Vec<usize>> = (start..start + step)
        .map(|k| (0..p).map(|t| (k + t * step) as usize).collect())
        .collect();
    Perm::from_cycles(degree, &cycles)
}

/// `P_{p,r}`, the Sylow p-subgroup of `S_{p^r}` generated by every `e_{i,j}`.
pub fn sylow_subgroup(p: u64, r: u32) -> Result<Group> {
    let degree = checked_pow(p, r)? as usize;
    if degree > 1 << 16 {
        return Err(Error::Range(format!("degree {degree} is too large")));
    }
    let mut gens = Vec::new();
    for i in 1..=r {
        for j in 1..=p.pow(i - 1) {
            gens.push(sylow_wreath_generator(p, r, i, j)?);
        }
    }
    Group::with_degree(degree, gens)
}

/// `l'` in `e_{i,j}^-1 e_{k,l} e_{i,j} = e_{k,l'}` for `i <= k`.
pub fn conjugated_index(p: u64, i: u32, j: u64, k: u32, l: u64) -> u64 {
    if i >= k {
        return l;
    }
    let span = p.pow(k - i);
    let lo = (j - 1) * span;
    if l <= lo || l > lo + span {
        return l;
    }
    let shift = p.pow(k - i - 1);
    lo + 1 + (l - lo - 1 + shift) % span
}

/// `(x, y, x')` generating the same group, with `[y,x]` and `[y,x']` of
/// different orders.
pub fn counterexample_generators(p: u64) -> Result<(Perm, Perm, Perm)> {
    require_prime(p)?;
    if p == 2 {
        let x = Perm::parse_with_degree("(1,9,5,13,3,11,7,15,2,10,6,14,4,12,8,16)", 16)?;
        let y = Perm::parse_with_degree("(1,9,2,10)(3,11)(4,12)(5,15,7,13)(6,16,8,14)", 16)?;
        let x3 = Perm::parse_with_degree("(1,13,7,10,4,16,5,11,2,14,8,9,3,15,6,12)", 16)?;
        return Ok((x, y, x3));
    }
    let e = |i, j| sylow_wreath_generator(p, 4, i, j);
    let x = &e(1, 1)? * &e(2, 1)?;
    let y = &(&(&e(1, 1)? * &e(2, 1)?) * &e(3, 1)?) * &e(4, 1 + p * p)?;
    let x2 = &x * &x;
    Ok((x, y, x2))
}

/// The subgroup `H_p = <x, y>` of `P_{p,4}` together with `(x, y, x')`.
pub fn counterexample_group(p: u64) -> Result<(Group, Perm, Perm, Perm)> {
    let (x, y, x2) = counterexample_generators(p)?;
    let g = Group::new(vec![x.clone(), y.clone()])?;
    Ok((g, x, y, x2))
}

/// A 2-group in `S_16` with `ord([x,y]) = 4` and `ord([x,y^3]) = 2` whose
/// derived subgroup is weakly power-closed. Returns `(G, x, y)`.
pub fn power_closed_example() -> Result<(Group, Perm, Perm)> {
    let x = Perm::parse_with_degree("(1,13,2,14)(3,16,4,15)(5,9,7,11,6,10,8,12)", 16)?;
    let y = Perm::parse_with_degree("(1,16,6,11,4,14,7,9,2,15,5,12,3,13,8,10)", 16)?;
    let g = Group::new(vec![x.clone(), y.clone()])?;
    Ok((g, x, y))
}

/// An ordered pair of generators `(x, y)`.
pub type Pair = (Perm, Perm);

/// The pairs `((1,...,n), (1,2,3))` and `((3,...,n), (1,3)(2,4))` and the
/// group generated by the first pair. For odd `n` this is `A_n`. For even
/// `n` the long cycles are odd permutations and the group is `S_n`; at
/// `n = 6` the second pair only generates a group of order 120, which is
/// reported as [`Error::NotGeneratingPair`].
pub fn alternating_example(n: usize) -> Result<(Group, Pair, Pair)> {
    if !(5..=10).contains(&n) {
        return Err(Error::Range(format!("need 5 <= n <= 10, got {n}")));
    }
    let long = Perm::from_cycles(n, &[(1..=n).collect()])?;
    let three = Perm::from_cycles(n, &[vec![1, 2, 3]])?;
    let tail = Perm::from_cycles(n, &[(3..=n).collect()])?;
    let double = Perm::from_cycles(n, &[vec![1, 3], vec![2, 4]])?;
    let g = Group::new(vec![long.clone(), three.clone()])?;
    if !(g.contains(&tail) && g.contains(&double))
        || crate::chain::StabilizerChain::new(n, &[tail.clone(), double.clone()]).order()
            != g.order()
    {
        return Err(Error::NotGeneratingPair);
    }
    Ok((g, (long, three), (tail, double)))
}

/// Least `m >= 1` with `a^m ≡ 1 (mod modulus)`.
pub fn multiplicative_order(a: i64, modulus: u64) -> Result<u64> {
    if modulus == 0 {
        return Err(Error::Range("modulus must be positive".into()));
    }
    let r = residue(a, modulus);
    if gcd(r, modulus) != 1 {
        return Err(Error::NotCoprime { a, modulus });
    }
    let mut acc = r % modulus;
    let mut m = 1;
    while acc != 1 % modulus {
        acc = ((acc as u128 * r as u128) % modulus as u128) as u64;
        m += 1;
    }
    Ok(m)
}

/// Two uniformly random elements of `group`.
pub fn random_pair(group: &Group, rng: &mut ChaCha8Rng) -> (Perm, Perm) {
    let chain = group.chain();
    let x = chain.random_element(rng);
    let y = chain.random_element(rng);
    (x, y)
}

/// A random pair of `P_{p,r}` drawn with a ChaCha8 generator seeded by
/// `seed`, and the group it generates.
pub fn random_two_generated_subgroup(p: u64, r: u32, seed: u64) -> Result<(Group, Perm, Perm)> {
    let sylow = sylow_subgroup(p, r)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (x, y) = random_pair(&sylow, &mut rng);
    let g = Group::with_degree(sylow.degree(), vec![x.clone(), y.clone()])?;
    Ok((g, x, y))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Tower {
    /// `D_{2^n}` with the pair `(s, s·r)`.
    DihedralStaircase,
    /// `D_{2^n}` with the pair `(r, s)`.
    DihedralRotation,
    /// `W_n` with `(x, y)`.
    Wollmilchsau,
    /// `C_{p^n} × C_{p^n}` with the canonical pair.
    Abelian(u64),
}

impl Tower {
    pub fn name(self) -> String {
        match self {
            Tower::DihedralStaircase => "dihedral_staircase".into(),
            Tower::DihedralRotation => "dihedral_rotation".into(),
            Tower::Wollmilchsau => "wollmilchsau".into(),
            Tower::Abelian(p) => format!("abelian_{p}"),
        }
    }

    fn level(self, n: u32, caps: Caps) -> Result<(Group, Perm, Perm)> {
        match self {
            Tower::DihedralStaircase => {
                let (g, r, s) = maximal_class_family(MaximalClass::Dihedral, n, caps)?;
                let sr = &s * &r;
                Ok((g, s, sr))
            }
            Tower::DihedralRotation => maximal_class_family(MaximalClass::Dihedral, n, caps),
            Tower::Wollmilchsau => wollmilchsau_group(n, caps),
            Tower::Abelian(p) => semidirect_cyclic(p, n, n, 1),
        }
    }

    pub fn min_level(self) -> u32 {
        match self {
            Tower::DihedralStaircase | Tower::DihedralRotation => 3,
            Tower::Wollmilchsau | Tower::Abelian(_) => 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Trend {
    Stabilizing,
    Diverging,
}

impl Trend {
    pub fn as_str(self) -> &'static str {
        match self {
            Trend::Stabilizing => "stabilizing",
            Trend::Diverging => "diverging",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerLevel {
    pub level: u32,
    pub order: u128,
    pub commutator_order: u64,
    pub singularities: u128,
    pub stratum: Stratum,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerReport {
    pub tower: Tower,
    pub levels: Vec<TowerLevel>,
    /// Diverging when the commutator order strictly increases at every step.
    pub trend: Trend,
}

pub fn tower_report(tower: Tower, from: u32, to: u32, caps: Caps) -> Result<TowerReport> {
    if from < tower.min_level() || from > to {
        return Err(Error::Range(format!(
            "levels must satisfy {} <= from <= to, got {from}..{to}",
            tower.min_level()
        )));
    }
    let mut levels = Vec::new();
    for n in from..=to {
        let (g, x, y) = tower.level(n, caps)?;
        let data = SingularityData::new(g.order(), commutator(&x, &y).order());
        levels.push(TowerLevel {
            level: n,
            order: g.order(),
            commutator_order: data.multiplicity,
            singularities: data.count,
            stratum: data.stratum,
        });
    }
    let diverging = levels.len() > 1
        && levels
            .windows(2)
            .all(|w| w[1].commutator_order > w[0].commutator_order);
    Ok(TowerReport {
        tower,
        levels,
        trend: if diverging {
            Trend::Diverging
        } else {
            Trend::Stabilizing
        },
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SearchPredicate {
    /// `ord([x,y]) != ord([x, y^(p+1)])`.
    OrderMismatch,
    /// The same, and the derived subgroup of `<x,y>` is weakly power-closed.
    OrderMismatchAndWpcDerived,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found {
        x: Perm,
        y: Perm,
        /// 1-based iteration at which the witness was drawn.
        iteration: u64,
        /// `ord([x,y])` and `ord([x,y^(p+1)])`.
        orders: (u64, u64),
    },
    NotFound {
        iterations: u64,
    },
}

/// Draw random pairs of `P_{p,r}` until one satisfies `predicate`.
pub fn search_counterexample(
    p: u64,
    r: u32,
    seed: u64,
    max_iter: u64,
    predicate: SearchPredicate,
) -> Result<SearchOutcome> {
    let sylow = sylow_subgroup(p, r)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let e = p as i64 + 1;
    for iteration in 1..=max_iter {
        let (x, y) = random_pair(&sylow, &mut rng);
        let a = commutator(&x, &y).order();
        let b = commutator(&x, &y.pow(e)).order();
        if a == b {
            continue;
        }
        if predicate == SearchPredicate::OrderMismatchAndWpcDerived {
            let g = Group::with_degree(sylow.degree(), vec![x.clone(), y.clone()])?;
            if !is_weakly_power_closed(&g.derived_subgroup())? {
                continue;
            }
        }
        return Ok(SearchOutcome::Found {
            x,
            y,
            iteration,
            orders: (a, b),
        });
    }
    Ok(SearchOutcome::NotFound {
        iterations: max_iter,
    })
}

/// A named family with its parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    Strata { p: u64, n: u32, k: u32 },
    MaximalClass { kind: MaximalClass, n: u32 },
    SylowWreath { p: u64, r: u32 },
    Counterexample { p: u64 },
    Wollmilchsau { n: u32 },
    Alternating { n: usize },
    Semidirect { p: u64, l: u32, m: u32, a: i64 },
    PowerClosedExample,
}

/// A constructed family member. `pair` is the designated generating pair,
/// `alternate` a second pair where the family has one.
#[derive(Clone, Debug)]
pub struct FamilyInstance {
    pub group: Group,
    pub pair: Option<(Perm, Perm)>,
    pub alternate: Option<(Perm, Perm)>,
}

impl FamilySpec {
    pub fn name(&self) -> &'static str {
        match self {
            FamilySpec::Strata { .. } => "strata",
            FamilySpec::MaximalClass { kind, .. } => kind.name(),
            FamilySpec::SylowWreath { .. } => "sylow_wreath",
            FamilySpec::Counterexample { .. } => "counterexample",
            FamilySpec::Wollmilchsau { .. } => "wollmilchsau",
            FamilySpec::Alternating { .. } => "alternating",
            FamilySpec::Semidirect { .. } => "semidirect",
            FamilySpec::PowerClosedExample => "power_closed_example",
        }
    }

    pub fn build(&self, caps: Caps) -> Result<FamilyInstance> {
        let plain = |(g, x, y): (Group, Perm, Perm)| FamilyInstance {
            group: g.with_new_caps(caps),
            pair: Some((x, y)),
            alternate: None,
        };
        Ok(match *self {
            FamilySpec::Strata { p, n, k } => plain(strata_family(p, n, k)?),
            FamilySpec::MaximalClass { kind, n } => plain(maximal_class_family(kind, n, caps)?),
            FamilySpec::SylowWreath { p, r } => FamilyInstance {
                group: sylow_subgroup(p, r)?.with_new_caps(caps),
                pair: None,
                alternate: None,
            },
            FamilySpec::Counterexample { p } => {
                let (g, x, y, x2) = counterexample_group(p)?;
                FamilyInstance {
                    group: g.with_new_caps(caps),
                    alternate: Some((x2, y.clone())),
                    pair: Some((x, y)),
                }
            }
            FamilySpec::Wollmilchsau { n } => plain(wollmilchsau_group(n, caps)?),
            FamilySpec::Alternating { n } => {
                let (g, a, b) = alternating_example(n)?;
                FamilyInstance {
                    group: g.with_new_caps(caps),
                    pair: Some(a),
                    alternate: Some(b),
                }
            }
            FamilySpec::Semidirect { p, l, m, a } => plain(semidirect_cyclic(p, l, m, a)?),
            FamilySpec::PowerClosedExample => {
                let (g, x, y) = power_closed_example()?;
                let y3 = y.pow(3);
                FamilyInstance {
                    group: g.with_new_caps(caps),
                    alternate: Some((x.clone(), y3)),
                    pair: Some((x, y)),
                }
            }
        })
    }
}
