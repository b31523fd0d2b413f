//! Holomorphic and topological Lefschetz bookkeeping for automorphisms of
//! finite order on a K3 surface.
//!
//! The holomorphic side uses `g*|H²(O) = ζ^{-1}`, so the left-hand side is
//! `1 + ζ^{-1}`. An isolated fixed point with local action `diag(ζ^a, ζ^b)`
//! contributes `1/((1-ζ^a)(1-ζ^b))`; a fixed curve of genus `g` and
//! self-intersection `C²` contributes `(1-g)/(1-ζ) - ζ C²/(1-ζ)²`.

use crate::cyclotomic::{CycloNum, ORDERS};
use crate::{linalg, CanonicalIndex, Error, Result};
use num::{BigInt, BigRational, Integer, One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Local action `diag(ζn^a, ζn^b)` at an isolated fixed point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LocalFixedPointType {
    order: u32,
    a: u32,
    b: u32,
}

impl LocalFixedPointType {
    /// Exponents are reduced mod `order`; they must be nonzero and sum to 1.
    pub fn new(order: u32, a: u32, b: u32) -> Result<Self> {
        if !ORDERS.contains(&order) {
            return Err(Error::UnsupportedOrder(order));
        }
        let (a, b) = (a % order, b % order);
        if a == 0 || b == 0 {
            return Err(Error::DegenerateLocalType { order, a, b });
        }
        if (a + b) % order != 1 % order {
            return Err(Error::InvalidLocalType { order, a, b });
        }
        Ok(LocalFixedPointType { order, a, b })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn exponents(&self) -> (u32, u32) {
        (self.a, self.b)
    }
}

impl fmt::Display for LocalFixedPointType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "diag(ζ{n}^{}, ζ{n}^{})", self.a, self.b, n = self.order)
    }
}

/// Local types of isolated fixed points that occur for each index.
pub fn local_types(index: CanonicalIndex) -> Vec<LocalFixedPointType> {
    let pairs: &[(u32, u32)] = match index {
        CanonicalIndex::Two => &[],
        CanonicalIndex::Three => &[(2, 2)],
        CanonicalIndex::Four => &[(2, 3)],
        CanonicalIndex::Six => &[(2, 5), (3, 4)],
    };
    pairs
        .iter()
        .map(|&(a, b)| LocalFixedPointType::new(index.value(), a, b).expect("standard types are valid"))
        .collect()
}

/// `1 + ζ^{-1}`, the alternating trace on `H^i(O)`.
pub fn holomorphic_lhs(index: CanonicalIndex) -> CycloNum {
    let n = index.value();
    &CycloNum::one(n).expect("menu order") + &CycloNum::zeta_pow(n, -1).expect("menu order")
}

/// Contribution `1/det(1 - g*|T_P)` of an isolated fixed point.
pub fn point_term(t: &LocalFixedPointType) -> Result<CycloNum> {
    let n = t.order;
    let one = CycloNum::one(n)?;
    let da = &one - &CycloNum::zeta_pow(n, t.a as i64)?;
    let db = &one - &CycloNum::zeta_pow(n, t.b as i64)?;
    (&da * &db).inv()
}

/// Contribution of a pointwise fixed curve with normal eigenvalue `ζ^{-1}`.
pub fn curve_term(order: u32, genus: i64, self_intersection: i64) -> Result<CycloNum> {
    let z = CycloNum::zeta_pow(order, 1)?;
    let d = &CycloNum::one(order)? - &z;
    let first = CycloNum::integer(order, 1 - genus)?.div(&d)?;
    let second = z.scale(&rat(self_intersection)).div(&(&d * &d))?;
    Ok(&first - &second)
}

/// One symbolic summand `multiplicity · symbol · value` of a fixed-locus sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedLocusTerm {
    pub symbol: String,
    pub multiplicity: u32,
    pub value: CycloNum,
}

/// Generic fixed locus for each index: `M` points and `N` (-2)-curves, or
/// for index 6 `2ℓ` points of each local type and `c` curves.
pub fn fixed_locus_terms(index: CanonicalIndex) -> Result<Vec<FixedLocusTerm>> {
    let n = index.value();
    let curve = curve_term(n, 0, -2)?;
    let terms = match index {
        CanonicalIndex::Two => return Err(Error::NoCountIdentity(2)),
        CanonicalIndex::Three | CanonicalIndex::Four => vec![
            FixedLocusTerm {
                symbol: "M".into(),
                multiplicity: 1,
                value: point_term(&local_types(index)[0])?,
            },
            FixedLocusTerm {
                symbol: "N".into(),
                multiplicity: 1,
                value: curve,
            },
        ],
        CanonicalIndex::Six => {
            let mut t: Vec<FixedLocusTerm> = local_types(index)
                .iter()
                .map(|lt| {
                    Ok(FixedLocusTerm {
                        symbol: "ℓ".into(),
                        multiplicity: 2,
                        value: point_term(lt)?,
                    })
                })
                .collect::<Result<_>>()?;
            t.push(FixedLocusTerm {
                symbol: "c".into(),
                multiplicity: 1,
                value: curve,
            });
            t
        }
    };
    Ok(terms)
}

/// Evaluates the fixed-locus sum at concrete counts.
pub fn fixed_locus_sum(index: CanonicalIndex, counts: &BTreeMap<String, i64>) -> Result<CycloNum> {
    let mut acc = CycloNum::zero(index.value())?;
    for t in fixed_locus_terms(index)? {
        let k = counts.get(&t.symbol).copied().unwrap_or(0) * t.multiplicity as i64;
        acc = &acc + &t.value.scale(&rat(k));
    }
    Ok(acc)
}

/// Integer relation `Σ coefficient·symbol = constant`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearRelation {
    pub terms: Vec<(String, i64)>,
    pub constant: i64,
}

impl LinearRelation {
    pub fn coefficient(&self, symbol: &str) -> i64 {
        self.terms.iter().find(|(s, _)| s == symbol).map_or(0, |(_, k)| *k)
    }

    pub fn holds(&self, values: &BTreeMap<String, i64>) -> bool {
        let lhs: i64 = self
            .terms
            .iter()
            .map(|(s, k)| k * values.get(s).copied().unwrap_or(0))
            .sum();
        lhs == self.constant
    }

    /// Rewrites the relation as `symbol = ...`, e.g. `M = 2N + 4`.
    pub fn solved_for(&self, symbol: &str) -> Option<String> {
        let k = self.coefficient(symbol);
        if k.abs() != 1 {
            return None;
        }
        let mut rhs: Vec<(String, i64)> = self
            .terms
            .iter()
            .filter(|(s, _)| s != symbol)
            .map(|(s, c)| (s.clone(), -c * k))
            .collect();
        rhs.push((String::new(), self.constant * k));
        Some(format!("{symbol} = {}", render_affine(&rhs)))
    }
}

fn render_affine(terms: &[(String, i64)]) -> String {
    let mut out = String::new();
    for (sym, k) in terms.iter().filter(|(_, k)| *k != 0) {
        let mag = k.abs();
        let body = match (sym.is_empty(), mag) {
            (true, _) => mag.to_string(),
            (false, 1) => sym.clone(),
            (false, _) => format!("{mag}{sym}"),
        };
        if out.is_empty() {
            out = if *k < 0 { format!("-{body}") } else { body };
        } else {
            out.push_str(if *k < 0 { " - " } else { " + " });
            out.push_str(&body);
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

impl fmt::Display for LinearRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", render_affine(&self.terms), self.constant)
    }
}

/// Equates `holomorphic_lhs` with the generic fixed-locus sum and returns the
/// primitive integer relation between the symbolic counts.
pub fn solve_count_identity(index: CanonicalIndex) -> Result<LinearRelation> {
    let lhs = holomorphic_lhs(index);
    if lhs.is_zero() {
        return Err(Error::NoCountIdentity(index.value()));
    }
    // group by symbol, preserving first-seen order
    let mut grouped: Vec<(String, CycloNum)> = Vec::new();
    for t in fixed_locus_terms(index)? {
        let v = t.value.scale(&rat(t.multiplicity as i64));
        match grouped.iter_mut().find(|(s, _)| *s == t.symbol) {
            Some((_, acc)) => *acc = &*acc + &v,
            None => grouped.push((t.symbol, v)),
        }
    }
    // Σ r_k x_k = 1 with r_k = coefficient / lhs
    let ratios: Vec<(String, BigRational)> = grouped
        .into_iter()
        .map(|(s, v)| {
            let r = v
                .div(&lhs)?
                .as_rational()
                .ok_or(Error::NoCountIdentity(index.value()))?;
            Ok((s, r))
        })
        .collect::<Result<_>>()?;
    let denom = ratios.iter().fold(BigInt::one(), |acc, (_, r)| acc.lcm(r.denom()));
    let scaled: Vec<(String, BigInt)> = ratios
        .into_iter()
        .map(|(s, r)| (s, (r * BigRational::from_integer(denom.clone())).to_integer()))
        .collect();
    let g = scaled.iter().fold(denom.clone(), |acc, (_, k)| acc.gcd(k));
    let to_i64 = |x: BigInt| (x / &g).to_i64().expect("small coefficients");
    let mut terms: Vec<(String, i64)> = scaled.into_iter().map(|(s, k)| (s, to_i64(k))).collect();
    let mut constant = to_i64(denom);
    if terms.first().is_some_and(|(_, k)| *k < 0) {
        terms.iter_mut().for_each(|(_, k)| *k = -*k);
        constant = -constant;
    }
    Ok(LinearRelation { terms, constant })
}

/// `(s, t)` ranks of the invariant and anti-invariant Picard parts for an
/// order-4 automorphism with `N` fixed curves.
pub fn picard_budget_index4(fixed_curves: u32) -> Result<(i64, i64)> {
    let n = fixed_curves as i64;
    // M = 2N + 4 isolated points, so χ(S^g) = M + 2N
    let euler = (2 * n + 4) + 2 * n;
    // χ = 2 + s - t and s + t = 20
    let s = (euler - 2 + 20) / 2;
    let t = 20 - s;
    if t < 0 {
        return Err(Error::BudgetViolation { fixed_curves: n, t });
    }
    Ok((s, t))
}

/// Multiplicities of the eigenvalues `ζn^k` of `g*` on `H²(S, Q)`, split into
/// the Picard and transcendental parts and indexed by the exponent `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EigenvalueProfile {
    order: u32,
    picard: Vec<u32>,
    transcendental: Vec<u32>,
}

impl EigenvalueProfile {
    pub fn new(order: u32, picard: Vec<u32>, transcendental: Vec<u32>) -> Result<Self> {
        let n = order as usize;
        if picard.len() != n || transcendental.len() != n {
            return Err(Error::InvalidProfile(format!("expected {n} multiplicities per part")));
        }
        for part in [&picard, &transcendental] {
            if (1..n).any(|k| part[k] != part[n - k]) {
                return Err(Error::InvalidProfile(
                    "conjugate eigenvalues differ in multiplicity".into(),
                ));
            }
        }
        let total: u32 = picard.iter().chain(&transcendental).sum();
        if total != 22 {
            return Err(Error::InvalidProfile(format!("total multiplicity {total} is not 22")));
        }
        Ok(EigenvalueProfile {
            order,
            picard,
            transcendental,
        })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn picard(&self) -> &[u32] {
        &self.picard
    }

    pub fn transcendental(&self) -> &[u32] {
        &self.transcendental
    }

    pub fn multiplicity(&self, exponent: usize) -> u32 {
        self.picard[exponent] + self.transcendental[exponent]
    }

    /// Trace of `(g^j)*` on `H²(S, Q)`.
    pub fn trace(&self, j: i64) -> BigRational {
        let m: Vec<BigRational> = (0..self.order as usize)
            .map(|k| rat(self.multiplicity(k) as i64))
            .collect();
        power_trace(self.order, &m, j)
    }

    /// `χ_top(S^{g^j})` by the topological Lefschetz formula.
    pub fn topological_lefschetz(&self, j: i64) -> BigRational {
        rat(2) + self.trace(j)
    }
}

fn power_trace(order: u32, mults: &[BigRational], j: i64) -> BigRational {
    let mut acc = CycloNum::zero(order).expect("menu order");
    for (k, m) in mults.iter().enumerate() {
        if m.is_zero() {
            continue;
        }
        acc = &acc + &CycloNum::zeta_pow(order, k as i64 * j).expect("menu order").scale(m);
    }
    acc.as_rational().expect("conjugate-symmetric traces are rational")
}

/// Affine form `constant + c·c + p·p + q·q` in the order-6 unknowns.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineForm {
    pub constant: i64,
    pub c: i64,
    pub p: i64,
    pub q: i64,
}

impl AffineForm {
    pub fn eval(&self, c: i64, p: i64, q: i64) -> i64 {
        self.constant + self.c * c + self.p * p + self.q * q
    }
}

impl fmt::Display for AffineForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = [
            ("c".to_string(), self.c),
            ("p".to_string(), self.p),
            ("q".to_string(), self.q),
            (String::new(), self.constant),
        ];
        write!(f, "{}", render_affine(&terms))
    }
}

/// Multiplicities `α, β, γ, δ` of the eigenvalues `1, -1, ζ6^{±2}` and
/// `ζ6^{±1}` (the latter as `1 + δ`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Order6Solution {
    pub alpha: i64,
    pub beta: i64,
    pub gamma: i64,
    pub delta: i64,
}

impl Order6Solution {
    fn named(&self) -> [(&'static str, i64); 4] {
        [
            ("α", self.alpha),
            ("β", self.beta),
            ("γ", self.gamma),
            ("δ", self.delta),
        ]
    }

    /// The profile, with the transcendental `ζ6^{±1}` pair split off.
    pub fn profile(&self) -> Option<EigenvalueProfile> {
        if self.named().iter().any(|(_, v)| *v < 0) {
            return None;
        }
        let (a, b, g, d) = (
            self.alpha as u32,
            self.beta as u32,
            self.gamma as u32,
            self.delta as u32,
        );
        EigenvalueProfile::new(6, vec![a, d, g, b, g, d], vec![0, 1, 0, 0, 0, 1]).ok()
    }
}

/// Exponents of ζ6 carried by each unknown.
const ORDER6_UNKNOWNS: [&[i64]; 4] = [&[0], &[3], &[2, 4], &[1, 5]];
const ORDER6_TRANSCENDENTAL: &[i64] = &[1, 5];

fn exponent_trace(exps: &[i64], j: i64) -> BigRational {
    let mut m = vec![BigRational::zero(); 6];
    for &e in exps {
        m[e as usize] += BigRational::one();
    }
    power_trace(6, &m, j)
}

/// Solves the three topological Lefschetz identities for `g, g², g³`
/// together with the dimension count of `H²` for `(α, β, γ, δ)`.
pub fn solve_order6_profile(c: i64, p: i64, q: i64) -> Order6Solution {
    // χ(S^g) = 2ℓ + 2ℓ + 2c with ℓ = c + 1
    let chi1 = 6 * c + 4;
    // 2c+2 + 2k isolated points (k = p + 1) and c + (c+1) + 2p curves
    let chi2 = (2 * c + 2) + (2 * p + 2) + 2 * (2 * c + 1 + 2 * p);
    // c + (2c+2) + 3q curves, no isolated points
    let chi3 = 2 * (3 * c + 2 + 3 * q);
    let mut matrix = Vec::new();
    let mut rhs = Vec::new();
    for (j, chi) in [(1, chi1), (2, chi2), (3, chi3)] {
        matrix.push(ORDER6_UNKNOWNS.iter().map(|e| exponent_trace(e, j)).collect());
        rhs.push(rat(chi) - rat(2) - exponent_trace(ORDER6_TRANSCENDENTAL, j));
    }
    matrix.push(ORDER6_UNKNOWNS.iter().map(|e| rat(e.len() as i64)).collect());
    rhs.push(rat(22 - ORDER6_TRANSCENDENTAL.len() as i64));
    let x = linalg::solve(matrix, rhs).expect("order-6 system is nonsingular");
    let int = |r: &BigRational| {
        assert!(r.is_integer(), "order-6 solution is integral");
        r.to_integer().to_i64().expect("small")
    };
    Order6Solution {
        alpha: int(&x[0]),
        beta: int(&x[1]),
        gamma: int(&x[2]),
        delta: int(&x[3]),
    }
}

/// General solution of the order-6 system as affine forms in `c, p, q`.
pub fn order6_general_solution() -> [AffineForm; 4] {
    let base = solve_order6_profile(0, 0, 0);
    let dc = solve_order6_profile(1, 0, 0);
    let dp = solve_order6_profile(0, 1, 0);
    let dq = solve_order6_profile(0, 0, 1);
    let form = |f: fn(&Order6Solution) -> i64| AffineForm {
        constant: f(&base),
        c: f(&dc) - f(&base),
        p: f(&dp) - f(&base),
        q: f(&dq) - f(&base),
    };
    [
        form(|s| s.alpha),
        form(|s| s.beta),
        form(|s| s.gamma),
        form(|s| s.delta),
    ]
}

/// Why a branch of the order-6 analysis cannot occur.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Order6Contradiction {
    NegativeMultiplicity {
        name: String,
        value: i64,
    },
    ComponentCount {
        m: i64,
        max: i64,
    },
    OddPairedComponents {
        n: i64,
    },
    TooManyPairedComponents {
        n: i64,
        max: i64,
    },
    RankShortfall {
        available: i64,
    },
    /// Every split of the `g³`-fixed curves fails.
    AllBranchesFail,
    /// The remaining rank is odd but those components come in pairs.
    Parity {
        remaining_rank: i64,
    },
    /// An `A1` component would be a `g`-fixed curve, but `c = 0`.
    FixedCurve,
}

impl fmt::Display for Order6Contradiction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order6Contradiction::NegativeMultiplicity { name, value } => {
                write!(f, "{name} = {value} is negative")
            }
            Order6Contradiction::ComponentCount { m, max } => {
                write!(f, "m = {m} outside 1..={max}")
            }
            Order6Contradiction::OddPairedComponents { n } => write!(f, "n = {n} is odd"),
            Order6Contradiction::TooManyPairedComponents { n, max } => {
                write!(f, "n = {n} exceeds 2p = {max}")
            }
            Order6Contradiction::RankShortfall { available } => {
                write!(f, "rank bound {available} < 18")
            }
            Order6Contradiction::AllBranchesFail => write!(f, "every branch fails"),
            Order6Contradiction::Parity { remaining_rank } => {
                write!(f, "parity contradiction: remaining rank {remaining_rank} is odd")
            }
            Order6Contradiction::FixedCurve => {
                write!(f, "fixed-curve contradiction: A1 components are g-fixed but c = 0")
            }
        }
    }
}

/// One way of splitting the `g³`-fixed curves over `m` components `A_{2m_i-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Order6Branch {
    pub parts: Vec<i64>,
    pub components: String,
    pub remaining_rank: i64,
    pub contradiction: Option<Order6Contradiction>,
}

/// Outcome of [`solve_order6_budget`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Order6Analysis {
    pub c: i64,
    pub p: i64,
    pub q: i64,
    pub m: i64,
    pub n: i64,
    pub solution: Order6Solution,
    pub profile: Option<EigenvalueProfile>,
    pub branches: Vec<Order6Branch>,
    pub contradiction: Option<Order6Contradiction>,
}

fn partitions(total: i64, parts: i64, max_part: i64) -> Vec<Vec<i64>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (1..=max_part.min(total)).rev() {
        for mut rest in partitions(total - first, parts - 1, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Runs the order-6 analysis for `c` fixed curves, `p`, `q`, `m` components
/// stable under `g³` and `n` components stable under `g²` only.
pub fn solve_order6_budget(c: i64, p: i64, q: i64, m: i64, n: i64) -> Order6Analysis {
    let solution = solve_order6_profile(c, p, q);
    let profile = solution.profile();
    let mut analysis = Order6Analysis {
        c,
        p,
        q,
        m,
        n,
        solution,
        profile,
        branches: Vec::new(),
        contradiction: None,
    };
    if let Some((name, value)) = solution.named().into_iter().find(|(_, v)| *v < 0) {
        analysis.contradiction = Some(Order6Contradiction::NegativeMultiplicity {
            name: name.into(),
            value,
        });
        return analysis;
    }
    let fixed3 = 3 * (c + q) + 2;
    if m < 1 || m > fixed3 {
        analysis.contradiction = Some(Order6Contradiction::ComponentCount { m, max: fixed3 });
        return analysis;
    }
    if n % 2 != 0 {
        analysis.contradiction = Some(Order6Contradiction::OddPairedComponents { n });
        return analysis;
    }
    if n > 2 * p {
        analysis.contradiction = Some(Order6Contradiction::TooManyPairedComponents { n, max: 2 * p });
        return analysis;
    }
    let available = 6 * (c + p + q) + 4 - m + n;
    if available < 18 {
        analysis.contradiction = Some(Order6Contradiction::RankShortfall { available });
        return analysis;
    }
    for parts in partitions(fixed3, m, fixed3) {
        let used: i64 = parts.iter().map(|k| 2 * k - 1).sum();
        let remaining_rank = 18 - used;
        let contradiction = if remaining_rank % 2 != 0 {
            Some(Order6Contradiction::Parity { remaining_rank })
        } else if c == 0 && parts.contains(&1) {
            Some(Order6Contradiction::FixedCurve)
        } else {
            None
        };
        let mut names: Vec<i64> = parts.iter().map(|k| 2 * k - 1).collect();
        names.sort();
        analysis.branches.push(Order6Branch {
            components: names.iter().map(|r| format!("A{r}")).collect::<Vec<_>>().join("+"),
            parts,
            remaining_rank,
            contradiction,
        });
    }
    if analysis.branches.iter().all(|b| b.contradiction.is_some()) {
        analysis.contradiction = Some(Order6Contradiction::AllBranchesFail);
    }
    analysis
}

/// Parameters `(c, p, q, m, n)` surviving the rank chain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ChainCase {
    pub c: i64,
    pub p: i64,
    pub q: i64,
    pub m: i64,
    pub n: i64,
}

/// Complete record of the index-6 impossibility argument.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Order6Trace {
    pub alpha: AffineForm,
    pub beta: AffineForm,
    pub gamma: AffineForm,
    pub delta: AffineForm,
    pub max_cpq: i64,
    pub survivors: Vec<ChainCase>,
    pub analyses: Vec<Order6Analysis>,
    pub impossible: bool,
    pub lines: Vec<String>,
}

/// Runs the full index-6 argument.
pub fn order6_trace() -> Order6Trace {
    let [alpha, beta, gamma, delta] = order6_general_solution();
    // δ ≥ 0 bounds c + p + q; the bound is read off the affine form
    let max_cpq = (0..=22)
        .take_while(|&s| delta.eval(s, 0, 0) >= 0 && delta.eval(0, s, 0) >= 0 && delta.eval(0, 0, s) >= 0)
        .last()
        .unwrap_or(0);
    let mut survivors = Vec::new();
    for c in 0..=max_cpq {
        for p in 0..=max_cpq - c {
            for q in 0..=max_cpq - c - p {
                if [alpha, beta, gamma, delta].iter().any(|f| f.eval(c, p, q) < 0) {
                    continue;
                }
                for m in 1..=3 * (c + q) + 2 {
                    for n in (0..=2 * p).step_by(2) {
                        if 6 * (c + p + q) + 4 - m + n >= 18 {
                            survivors.push(ChainCase { c, p, q, m, n });
                        }
                    }
                }
            }
        }
    }
    let analyses: Vec<Order6Analysis> = survivors
        .iter()
        .map(|s| solve_order6_budget(s.c, s.p, s.q, s.m, s.n))
        .collect();
    let impossible = analyses.iter().all(|a| a.contradiction.is_some());

    let mut lines = vec![
        format!("α = {alpha}"),
        format!("β = {beta}"),
        format!("γ = {gamma}"),
        format!("δ = {delta}"),
        format!("δ ≥ 0 gives c + p + q ≤ {max_cpq}"),
    ];
    lines.push(format!(
        "18 ≤ 6(c+p+q) + 4 - m + n with n ≤ 2p even leaves {}",
        survivors
            .iter()
            .map(|s| format!("(c={}, p={}, q={}, m={}, n={})", s.c, s.p, s.q, s.m, s.n))
            .collect::<Vec<_>>()
            .join(", ")
    ));
    for a in &analyses {
        for b in &a.branches {
            let verdict = b
                .contradiction
                .as_ref()
                .map_or("consistent".to_string(), |c| c.to_string());
            lines.push(format!(
                "m={}: {} leaves rank {}, {}",
                a.m, b.components, b.remaining_rank, verdict
            ));
        }
    }
    lines.push(if impossible {
        "index 6 is impossible".into()
    } else {
        "index 6 not excluded".into()
    });

    Order6Trace {
        alpha,
        beta,
        gamma,
        delta,
        max_cpq,
        survivors,
        analyses,
        impossible,
        lines,
    }
}

/// One exact identity with both sides rendered.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub name: String,
    pub lhs: String,
    pub rhs: String,
    pub exact: bool,
}

fn check(name: impl Into<String>, lhs: &CycloNum, rhs: &CycloNum) -> IdentityCheck {
    IdentityCheck {
        name: name.into(),
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
        exact: crate::cyclotomic::eq(lhs, rhs),
    }
}

fn frac(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Every closed-form Lefschetz value and count identity used by the
/// classification, each evaluated exactly.
pub fn identity_suite() -> Result<Vec<IdentityCheck>> {
    use crate::cyclotomic::{i_sqrt3, imaginary_unit};
    let one4 = CycloNum::one(4)?;
    let one6 = CycloNum::one(6)?;
    let one_minus_i = &one4 - &imaginary_unit();
    let u = &one6.scale(&rat(3)) - &i_sqrt3();
    let mut out = vec![
        check(
            "holomorphic_lhs(2)",
            &holomorphic_lhs(CanonicalIndex::Two),
            &CycloNum::zero(2)?,
        ),
        check(
            "holomorphic_lhs(4)",
            &holomorphic_lhs(CanonicalIndex::Four),
            &one_minus_i,
        ),
        check(
            "holomorphic_lhs(6)",
            &holomorphic_lhs(CanonicalIndex::Six),
            &u.scale(&frac(1, 2)),
        ),
        check(
            "point_term(4, (2, 3))",
            &point_term(&LocalFixedPointType::new(4, 2, 3)?)?,
            &one_minus_i.scale(&frac(1, 4)),
        ),
        check(
            "point_term(6, (2, 5))",
            &point_term(&LocalFixedPointType::new(6, 2, 5)?)?,
            &u.scale(&frac(1, 6)),
        ),
        check(
            "point_term(6, (3, 4))",
            &point_term(&LocalFixedPointType::new(6, 3, 4)?)?,
            &u.scale(&frac(1, 12)),
        ),
        check(
            "curve_term(4, 0, -2)",
            &curve_term(4, 0, -2)?,
            &one_minus_i.scale(&frac(-1, 2)),
        ),
        check("curve_term(6, 0, -2)", &curve_term(6, 0, -2)?, &u.scale(&frac(-1, 2))),
    ];
    let expected = [
        (CanonicalIndex::Three, "M - N = 3"),
        (CanonicalIndex::Four, "M - 2N = 4"),
        (CanonicalIndex::Six, "ℓ - c = 1"),
    ];
    for (index, want) in expected {
        let rel = solve_count_identity(index)?;
        out.push(IdentityCheck {
            name: format!("solve_count_identity({index})"),
            lhs: rel.to_string(),
            rhs: want.into(),
            exact: rel.to_string() == want,
        });
        // substitute the relation back: both sides agree for every count
        let (free, bound) = match index {
            CanonicalIndex::Six => ("c", "ℓ"),
            _ => ("N", "M"),
        };
        let k_bound = rel.coefficient(bound);
        let lhs = holomorphic_lhs(index);
        let all = (0..=20).all(|x| {
            let y = (rel.constant - rel.coefficient(free) * x) / k_bound;
            let counts = BTreeMap::from([(free.to_string(), x), (bound.to_string(), y)]);
            fixed_locus_sum(index, &counts).is_ok_and(|s| crate::cyclotomic::eq(&s, &lhs))
        });
        out.push(IdentityCheck {
            name: format!(
                "fixed-locus sum at {} for {free} in 0..=20 (index {index})",
                rel.solved_for(bound).unwrap_or_default()
            ),
            lhs: lhs.to_string(),
            rhs: "fixed-locus sum".into(),
            exact: all,
        });
    }
    for n in 0..=4u32 {
        let (s, t) = picard_budget_index4(n)?;
        out.push(IdentityCheck {
            name: format!("picard_budget_index4({n})"),
            lhs: format!("({s}, {t})"),
            rhs: format!("({}, {})", 11 + 2 * n as i64, 9 - 2 * n as i64),
            exact: (s, t) == (11 + 2 * n as i64, 9 - 2 * n as i64),
        });
    }
    out.push(IdentityCheck {
        name: "picard_budget_index4(5)".into(),
        lhs: match picard_budget_index4(5) {
            Ok((s, t)) => format!("({s}, {t})"),
            Err(e) => e.to_string(),
        },
        rhs: "budget violation".into(),
        exact: matches!(picard_budget_index4(5), Err(Error::BudgetViolation { .. })),
    });
    Ok(out)
}
