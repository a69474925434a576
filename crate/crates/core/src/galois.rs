//! Galois groups of splitting fields over ℚ, fixed fields, the Galois
//! correspondence, trace and norm, and solvability by radicals.

use std::collections::HashSet;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{Int, Rat};
use crate::factor::{factor_over_numberfield, is_irreducible};
use crate::numfield::approx::{Approx, PREC};
use crate::numfield::linalg::nullspace;
use crate::numfield::{minpoly_of, splitting_field_capped, NfElement, NumberField, SplittingField, DEFAULT_NF_CAP};
use crate::perm::{generate, FiniteGroup, Perm, Subgroup, DEFAULT_SUBGROUP_CAP};
use crate::poly::{sturm_real_roots, Poly, QPoly};

/// Largest prime `p` for which the generation of `S_p` by a `p`-cycle and a
/// transposition is re-checked by closure (`7! = 5040` elements).
pub const SYMMETRIC_CHECK_LIMIT: usize = 7;

/// Fixed fields with a basis at most this long also try pairwise combinations
/// of basis vectors when looking for a small primitive element.
const PAIR_SEARCH_LIMIT: usize = 8;

/// A field automorphism of `K = ℚ(θ)`, determined by the image of `θ`.
#[derive(Clone, Debug, PartialEq)]
pub struct Automorphism {
    theta_image: NfElement,
}

impl Automorphism {
    pub fn field(&self) -> &NumberField {
        self.theta_image.field()
    }

    pub fn theta_image(&self) -> &NfElement {
        &self.theta_image
    }

    pub fn apply(&self, a: &NfElement) -> NfElement {
        a.substitute(&self.theta_image)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        Automorphism { theta_image: self.apply(&other.theta_image) }
    }

    pub fn is_identity(&self) -> bool {
        self.theta_image == self.field().theta()
    }
}

/// `Gal(K/ℚ)` for a splitting field `K`, acting on the recorded roots.
#[derive(Clone, Debug)]
pub struct GaloisGroup {
    splitting: SplittingField,
    autos: Vec<Automorphism>,
    root_perms: Vec<Perm>,
    group: FiniteGroup,
    // group element position -> index into autos
    auto_of: Vec<usize>,
}

impl GaloisGroup {
    pub fn splitting(&self) -> &SplittingField {
        &self.splitting
    }

    pub fn field(&self) -> &NumberField {
        self.splitting.field()
    }

    pub fn order(&self) -> usize {
        self.autos.len()
    }

    /// Automorphisms, identity first.
    pub fn automorphisms(&self) -> &[Automorphism] {
        &self.autos
    }

    /// Permutation of the roots induced by each automorphism, aligned with
    /// [`automorphisms`](Self::automorphisms).
    pub fn root_perms(&self) -> &[Perm] {
        &self.root_perms
    }

    /// The permutation group on the roots.
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    /// Automorphism at a position of [`group`](Self::group).
    pub fn automorphism_at(&self, pos: usize) -> &Automorphism {
        &self.autos[self.auto_of[pos]]
    }

    /// The automorphism inducing a given root permutation.
    pub fn automorphism_of(&self, p: &Perm) -> Option<&Automorphism> {
        self.group.position(p).map(|i| self.automorphism_at(i))
    }
}

/// All automorphisms of a splitting field.
///
/// `θ` is an integer combination of some of the roots, so its image is the
/// same combination of their images; every candidate assignment of roots is
/// tried and kept when it is again a root of the minimal polynomial of `θ`.
pub fn automorphism_group(sf: &SplittingField) -> Result<GaloisGroup> {
    let k = sf.field().clone();
    let roots = sf.roots();
    let m = k.lift_poly(k.minpoly());
    let combo = sf.theta_as_roots();
    let mut autos: Vec<Automorphism> = Vec::new();
    let mut images = vec![0usize; combo.len()];
    let mut used = vec![false; roots.len()];
    assign(0, &combo, roots, &mut images, &mut used, &mut |imgs: &[usize]| {
        let cand = combo
            .iter()
            .zip(imgs)
            .fold(k.from_i64(0), |acc, ((_, w), &r)| &acc + &roots[r].scale(&Rat::from_integer(w.clone())));
        if m.eval(&cand).is_zero() && !autos.iter().any(|a| a.theta_image == cand) {
            autos.push(Automorphism { theta_image: cand });
        }
    });
    if autos.len() != k.degree() {
        return Err(Error::Internal(format!(
            "found {} automorphisms of a field of degree {}",
            autos.len(),
            k.degree()
        )));
    }
    let n = roots.len();
    let mut perms = Vec::with_capacity(autos.len());
    for a in &autos {
        let mut img = Vec::with_capacity(n);
        for r in roots {
            let s = a.apply(r);
            let j = sf
                .root_index(&s)
                .ok_or_else(|| Error::Internal("automorphism does not permute the roots".into()))?;
            img.push(j + 1);
        }
        perms.push(Perm::from_images(&img)?);
    }
    // identity first, then by permutation
    let mut order: Vec<usize> = (0..autos.len()).collect();
    order.sort_by(|&a, &b| (!perms[a].is_identity()).cmp(&!perms[b].is_identity()).then(perms[a].cmp(&perms[b])));
    let autos: Vec<Automorphism> = order.iter().map(|&i| autos[i].clone()).collect();
    let perms: Vec<Perm> = order.iter().map(|&i| perms[i].clone()).collect();
    if perms.iter().collect::<HashSet<_>>().len() != perms.len() {
        return Err(Error::Internal("distinct automorphisms induce the same root permutation".into()));
    }
    let group = FiniteGroup::from_elements(n.max(1), perms.clone())?;
    if group.order() != autos.len() {
        return Err(Error::Internal("root permutations are not closed under composition".into()));
    }
    let auto_of = (0..group.order())
        .map(|i| perms.iter().position(|p| p == group.element(i)).unwrap())
        .collect();
    Ok(GaloisGroup { splitting: sf.clone(), autos, root_perms: perms, group, auto_of })
}

fn assign(
    j: usize,
    combo: &[(usize, Int)],
    roots: &[NfElement],
    images: &mut Vec<usize>,
    used: &mut Vec<bool>,
    visit: &mut dyn FnMut(&[usize]),
) {
    if j == combo.len() {
        visit(images);
        return;
    }
    for r in 0..roots.len() {
        if used[r] {
            continue;
        }
        used[r] = true;
        images[j] = r;
        assign(j + 1, combo, roots, images, used, visit);
        used[r] = false;
    }
}

/// Whether `K/ℚ` is Galois: the minimal polynomial of `θ` splits in `K`.
pub fn is_galois(k: &NumberField) -> Result<bool> {
    let d = k.degree();
    if d == 1 {
        return Ok(true);
    }
    let m = k.lift_poly(k.minpoly());
    let lin = Poly::new(k.clone(), vec![-k.theta(), k.from_i64(1)]);
    let rest = m.exact_div(&lin)?;
    let fac = factor_over_numberfield(&rest)?;
    let linear = fac.factors.iter().filter(|(g, _)| g.deg() == 1).count();
    Ok(linear + 1 == d)
}

/// A fixed field `K^H`.
#[derive(Clone, Debug, PartialEq)]
pub struct FixedField {
    /// Canonical basis of `K^H` as a ℚ-subspace of `K`.
    pub basis: Vec<Vec<Rat>>,
    pub primitive: NfElement,
    pub minpoly: QPoly,
    pub degree: usize,
}

/// Matrix of an automorphism in the power basis, minus the identity.
fn fixed_equations(g: &GaloisGroup, a: &Automorphism) -> Vec<Vec<Rat>> {
    let k = g.field();
    let d = k.degree();
    let mut cols = Vec::with_capacity(d);
    let mut p = k.from_i64(1);
    let image = a.theta_image();
    for _ in 0..d {
        cols.push(p.coeffs().to_vec());
        p = &p * image;
    }
    (0..d)
        .map(|i| {
            (0..d)
                .map(|j| {
                    let v = cols[j][i].clone();
                    if i == j {
                        v - Rat::one()
                    } else {
                        v
                    }
                })
                .collect()
        })
        .collect()
}

/// The fixed field of `H`, with a primitive element normalized to have trace
/// zero and a small integral minimal polynomial.
pub fn fixed_field(g: &GaloisGroup, h: &Subgroup) -> Result<FixedField> {
    g.group.check_subgroup(h)?;
    let k = g.field();
    let d = k.degree();
    let mut rows = Vec::new();
    for pos in g.group.small_generating_set(h) {
        rows.extend(fixed_equations(g, g.automorphism_at(pos)));
    }
    let basis = if rows.is_empty() {
        (0..d)
            .map(|i| (0..d).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect())
            .collect()
    } else {
        nullspace(&rows, d)
    };
    let target = d / h.order();
    if basis.len() * h.order() != d {
        return Err(Error::Internal(format!(
            "fixed field of a subgroup of order {} has dimension {} in degree {d}",
            h.order(),
            basis.len()
        )));
    }
    let (primitive, minpoly) = match orbit_sum_primitive(g, h, target) {
        Some(found) => found,
        None => {
            let elems: Vec<NfElement> = basis.iter().map(|v| k.elem(v.clone())).collect();
            primitive_element(k, &elems, target)?
        }
    };
    Ok(FixedField { basis, primitive, minpoly, degree: target })
}

/// A sum of integer multiples of monomials in the roots.
#[derive(Clone, Debug)]
struct RootExpr(Vec<(i64, Vec<usize>)>);

trait RootRing: Clone {
    fn add(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn times(&self, c: i64) -> Self;
}

impl RootRing for Approx {
    fn add(&self, o: &Self) -> Self {
        Approx::add(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        Approx::mul(self, o)
    }
    fn times(&self, c: i64) -> Self {
        self.scale(&Rat::from_integer(c.into()))
    }
}

impl RootRing for NfElement {
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn times(&self, c: i64) -> Self {
        self.scale(&Rat::from_integer(c.into()))
    }
}

impl RootExpr {
    /// Value with root `i` replaced by `roots[img[i]]`.
    fn eval<T: RootRing>(&self, roots: &[T], img: &[usize]) -> Option<T> {
        let mut acc: Option<T> = None;
        for (c, mono) in &self.0 {
            let mut t = roots[img[mono[0]]].clone();
            for &i in &mono[1..] {
                t = t.mul(&roots[img[i]]);
            }
            let t = t.times(*c);
            acc = Some(match acc {
                None => t,
                Some(a) => a.add(&t),
            });
        }
        acc
    }
}

fn root_expressions(n: usize) -> Vec<RootExpr> {
    let lin = |terms: &[(i64, usize)]| RootExpr(terms.iter().map(|&(c, i)| (c, vec![i])).collect());
    let mut out: Vec<RootExpr> = (0..n).map(|i| lin(&[(1, i)])).collect();
    let small = n <= 12;
    if small {
        for i in 0..n {
            for j in i + 1..n {
                out.push(RootExpr(vec![(1, vec![i, j])]));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    out.push(RootExpr(vec![(1, vec![i, i, j])]));
                    for c in [-1, 2, -2, 3] {
                        out.push(lin(&[(1, i), (c, j)]));
                    }
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                for l in 0..n {
                    if l != i && l != j {
                        out.push(RootExpr(vec![(1, vec![i, j]), (1, vec![l])]));
                    }
                }
            }
        }
    }
    if n <= 6 {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        for &(a, b) in &pairs {
            for &(c, d) in &pairs {
                if (a, b) != (c, d) {
                    out.push(RootExpr(vec![(1, vec![a, b]), (2, vec![c, d])]));
                }
            }
        }
        out.push(vandermonde(n));
    }
    for m in 3..=n {
        out.push(lin(&(0..m).map(|i| (i as i64 + 1, i)).collect::<Vec<_>>()));
    }
    out
}

/// `∏_{i<j} (r_j - r_i)` expanded as `Σ_σ sign(σ) ∏_i r_{σ(i)}^i`.
fn vandermonde(n: usize) -> RootExpr {
    let mut terms = Vec::new();
    for p in FiniteGroup::symmetric(n).elements() {
        let img = p.images();
        let mono: Vec<usize> = (0..n).flat_map(|i| std::iter::repeat_n(img[i] - 1, i)).collect();
        terms.push((i64::from(p.sign()), mono));
    }
    RootExpr(terms)
}

/// Looks for a small primitive element of `K^H` among orbit sums
/// `Σ_{h ∈ H} h(β)` of root expressions `β`. Candidates are screened and
/// ranked numerically; only the winner is built and checked exactly.
fn orbit_sum_primitive(g: &GaloisGroup, h: &Subgroup, target: usize) -> Option<(NfElement, QPoly)> {
    if target == 1 {
        return Some((g.field().from_i64(0), QPoly::x(crate::field::Rationals)));
    }
    let sf = &g.splitting;
    let n = sf.roots().len();
    // scale the roots to algebraic integers
    let f = sf.squarefree();
    let den = f.coeffs().iter().fold(Int::one(), |l, c| l.lcm(c.denom()));
    let ints: Vec<Int> = f.coeffs().iter().map(|c| (c * Rat::from_integer(den.clone())).to_integer()).collect();
    let content = ints.iter().fold(Int::zero(), |a, b| a.gcd(b));
    let lc = Rat::from_integer(ints.last()?.clone() / content);
    let approx: Vec<Approx> = sf.root_labels().iter().map(|a| a.scale(&lc)).collect();
    let group = &g.group;
    let imgs: Vec<Vec<usize>> = group
        .elements()
        .iter()
        .map(|p| p.images().into_iter().map(|i| i - 1).collect())
        .collect();
    let mut ranked: Vec<(RootExpr, Rat, Rat, bool, QPoly)> = Vec::new();
    for e in root_expressions(n) {
        let vals: Vec<Approx> = match imgs.iter().map(|im| e.eval(&approx, im)).collect::<Option<Vec<_>>>() {
            Some(v) => v,
            None => continue,
        };
        let mut conj: Vec<Approx> = Vec::new();
        for x in 0..group.order() {
            let v = h
                .members()
                .iter()
                .fold(Approx::zero(), |acc, &y| acc.add(&vals[group.mul(x, y)]));
            if !conj.iter().any(|c| c.dist_bits(&v) + 64 < u64::from(PREC)) {
                conj.push(v);
                if conj.len() > target {
                    break;
                }
            }
        }
        if conj.len() != target {
            continue;
        }
        let Some(p) = numeric_minpoly(&conj) else { continue };
        let (shift, scale, q) = normalize_poly(&p);
        let neg = negate_root(&q);
        let (flip, q) = if neg.cmp_canonical(&q).is_lt() { (true, neg) } else { (false, q) };
        ranked.push((e, shift, scale, flip, q));
        if ranked.len() >= 24 {
            break;
        }
    }
    ranked.sort_by(|a, b| poly_size(&a.4).cmp(&poly_size(&b.4)).then_with(|| a.4.cmp_canonical(&b.4)));
    let k = g.field();
    let roots: Vec<NfElement> = sf.roots().iter().map(|r| r.scale(&lc)).collect();
    for (e, shift, scale, flip, q) in ranked.into_iter().take(3) {
        let mut t = k.from_i64(0);
        for &y in h.members() {
            t = &t + &e.eval(&roots, &imgs[y])?;
        }
        let mut t = (&t + &k.from_rat(shift)).scale(&scale);
        if flip {
            t = -&t;
        }
        if k.lift_poly(&q).eval(&t).is_zero() {
            return Some((t, q));
        }
    }
    None
}

/// `∏ (x - c)` rounded to an integer polynomial.
fn numeric_minpoly(conj: &[Approx]) -> Option<QPoly> {
    let one = Approx::from_rat(&Rat::one());
    let mut c = vec![one];
    for v in conj {
        let mut next = vec![Approx::zero(); c.len() + 1];
        for (i, a) in c.iter().enumerate() {
            next[i + 1] = next[i + 1].add(a);
            next[i] = next[i].sub(&a.mul(v));
        }
        c = next;
    }
    let mut out = Vec::with_capacity(c.len());
    for a in &c {
        let n = a.nearest_integer(64)?;
        if n.bits() > 120 {
            return None;
        }
        out.push(Rat::from_integer(n));
    }
    Some(QPoly::from_rats(out))
}

/// Minimal polynomial of `-γ` from that of `γ`.
fn negate_root(p: &QPoly) -> QPoly {
    rescale(p, &-Rat::one())
}

/// For the minimal polynomial `p` of `γ`, returns `(s, t, q)` where `q` is
/// the minimal polynomial of `t(γ + s)`, which has trace zero and is
/// integral with no removable integer factor.
fn normalize_poly(p: &QPoly) -> (Rat, Rat, QPoly) {
    let k = p.deg();
    let p = p.monic();
    let shift = p.coeff(k - 1) / Rat::from_integer(Int::from(k));
    let p = p.shift(&-shift.clone());
    // scale by t: coefficient a_i becomes a_i t^(k-i)
    let mut t = Rat::one();
    let dens = p.coeffs().iter().fold(Int::one(), |l, c| l.lcm(c.denom()));
    for q in rough_primes(&dens) {
        let need = (0..k)
            .filter(|&i| !p.coeff(i).is_zero())
            .map(|i| valuation(p.coeff(i).denom(), &q).div_ceil((k - i) as u32))
            .max()
            .unwrap_or(0);
        t *= Rat::from_integer(q.pow(need));
    }
    let scaled = rescale(&p, &t);
    let g = scaled.coeffs().iter().take(k).fold(Int::zero(), |g, c| g.gcd(&c.to_integer()));
    let mut s = Rat::one();
    for q in rough_primes(&g) {
        let can = (0..k)
            .filter(|&i| !scaled.coeff(i).is_zero())
            .map(|i| valuation(&scaled.coeff(i).to_integer(), &q) / (k - i) as u32)
            .min()
            .unwrap_or(0);
        s *= Rat::from_integer(q.pow(can));
    }
    let t = t / s;
    let q = rescale(&p, &t);
    (shift, t, q)
}

fn primitive_element(k: &NumberField, basis: &[NfElement], target: usize) -> Result<(NfElement, QPoly)> {
    if target == 1 {
        return Ok((k.from_i64(0), QPoly::x(crate::field::Rationals)));
    }
    let mut best: Option<(NfElement, QPoly)> = None;
    for b in basis {
        consider(&mut best, b.clone(), target);
    }
    // pairwise sums and differences often give a smaller presentation
    if basis.len() <= PAIR_SEARCH_LIMIT {
        for (i, a) in basis.iter().enumerate() {
            for b in &basis[i + 1..] {
                consider(&mut best, a + b, target);
                consider(&mut best, a - b, target);
            }
        }
    }
    if best.is_none() {
        for c in 1i64..=64 {
            let mut acc = k.from_i64(0);
            let mut w = Rat::one();
            for b in basis {
                acc = &acc + &b.scale(&w);
                w *= Rat::from_integer(c.into());
            }
            consider(&mut best, acc, target);
            if best.is_some() {
                break;
            }
        }
    }
    best.ok_or_else(|| Error::Internal("no primitive element found for a fixed field".into()))
}

fn consider(best: &mut Option<(NfElement, QPoly)>, e: NfElement, target: usize) {
    if minpoly_of(&e).deg() != target {
        return;
    }
    let (e, p) = normalize(&e);
    // -e has the same size; keep the sign with the canonically smaller minpoly
    let (e, p) = {
        let neg = -&e;
        let q = minpoly_of(&neg);
        if q.cmp_canonical(&p).is_lt() {
            (neg, q)
        } else {
            (e, p)
        }
    };
    let better = match best {
        None => true,
        Some((_, q)) => poly_size(&p) < poly_size(q) || (poly_size(&p) == poly_size(q) && p.cmp_canonical(q).is_lt()),
    };
    if better {
        *best = Some((e, p));
    }
}

fn poly_size(p: &QPoly) -> (u64, usize) {
    let bits = p
        .coeffs()
        .iter()
        .map(|c| c.numer().bits() + c.denom().bits())
        .sum();
    (bits, p.deg())
}

/// Shifts `e` to trace zero and rescales so the minimal polynomial is
/// integral with no removable integer factor.
fn normalize(e: &NfElement) -> (NfElement, QPoly) {
    let (shift, t, q) = normalize_poly(&minpoly_of(e));
    let out = (e + &e.field().from_rat(shift)).scale(&t);
    (out, q)
}

/// Prime factors of `n` below `2^16`, followed by the remaining cofactor if
/// it is not 1. The cofactor need not be prime.
fn rough_primes(n: &Int) -> Vec<Int> {
    let mut m = n.abs();
    let mut out = Vec::new();
    if m.is_zero() {
        return out;
    }
    let mut d = 2u32;
    while d < 1 << 16 && Int::from(d) * Int::from(d) <= m {
        let q = Int::from(d);
        if (&m % &q).is_zero() {
            while (&m % &q).is_zero() {
                m /= &q;
            }
            out.push(q);
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if m > Int::one() {
        out.push(m);
    }
    out
}

fn valuation(n: &Int, q: &Int) -> u32 {
    let mut n = n.abs();
    let mut v = 0;
    if n.is_zero() {
        return 0;
    }
    while (&n % q).is_zero() {
        n /= q;
        v += 1;
    }
    v
}

/// Minimal polynomial of `t·γ` from that of `γ`.
fn rescale(p: &QPoly, t: &Rat) -> QPoly {
    let k = p.deg();
    let mut pw = Rat::one();
    let mut c = vec![Rat::zero(); k + 1];
    for i in (0..=k).rev() {
        c[i] = p.coeff(i) * &pw;
        pw *= t;
    }
    QPoly::from_rats(c)
}

/// One line of the Galois correspondence.
#[derive(Clone, Debug)]
pub struct CorrespondenceRow {
    pub subgroup: Subgroup,
    /// The subgroup's elements as root permutations.
    pub elements: Vec<Perm>,
    pub fixed: FixedField,
    pub degree_over_q: usize,
    pub index: usize,
    pub is_normal_subgroup: bool,
    pub is_galois_over_q: bool,
}

impl CorrespondenceRow {
    pub fn fixed_minpoly(&self) -> &QPoly {
        &self.fixed.minpoly
    }

    pub fn order(&self) -> usize {
        self.subgroup.order()
    }

    /// Subgroup written as a set of cycles, e.g. `{(), (2 3)}`.
    pub fn subgroup_text(&self) -> String {
        let parts: Vec<String> = self.elements.iter().map(Perm::to_string).collect();
        format!("{{{}}}", parts.join(", "))
    }

    /// `ℚ` or `ℚ(γ)` with `γ` a root of the fixed minimal polynomial.
    pub fn field_text(&self) -> String {
        if self.degree_over_q == 1 {
            "Q".into()
        } else {
            format!("Q(root of {})", self.fixed.minpoly)
        }
    }
}

pub fn correspondence_table(g: &GaloisGroup) -> Result<Vec<CorrespondenceRow>> {
    correspondence_table_capped(g, DEFAULT_SUBGROUP_CAP)
}

/// Every subgroup with its fixed field, in subgroup order. Checks Artin's
/// degree count, the index formula, normal ⇔ Galois, and that distinct
/// subgroups have distinct fixed fields.
pub fn correspondence_table_capped(g: &GaloisGroup, cap: usize) -> Result<Vec<CorrespondenceRow>> {
    let group = &g.group;
    let subgroups = group.subgroups(cap)?;
    let order = group.order();
    let gens_g: Vec<usize> = group.small_generating_set(&group.whole());
    let mut rows = Vec::with_capacity(subgroups.len());
    let mut seen = HashSet::new();
    for h in subgroups {
        let fixed = fixed_field(g, &h)?;
        let index = order / h.order();
        if fixed.degree != index {
            return Err(Error::Internal(format!("fixed field degree {} differs from index {index}", fixed.degree)));
        }
        if !seen.insert(fixed.basis.clone()) {
            return Err(Error::Internal("two subgroups have the same fixed field".into()));
        }
        let normal = group.is_normal(&h)?;
        let gens_h = group.small_generating_set(&h);
        // K^H is Galois over ℚ iff every conjugate of its generator stays fixed by H
        let galois = gens_g.iter().all(|&s| {
            let c = g.automorphism_at(s).apply(&fixed.primitive);
            gens_h.iter().all(|&t| g.automorphism_at(t).apply(&c) == c)
        });
        if normal != galois {
            return Err(Error::Internal("normality and Galois property disagree".into()));
        }
        let elements = h.members().iter().map(|&i| group.element(i).clone()).collect();
        rows.push(CorrespondenceRow {
            subgroup: h,
            elements,
            fixed,
            degree_over_q: index,
            index,
            is_normal_subgroup: normal,
            is_galois_over_q: galois,
        });
    }
    Ok(rows)
}

/// Plain-text chart in the `H | K^H` layout.
pub fn render_chart(rows: &[CorrespondenceRow]) -> String {
    let left: Vec<String> = rows.iter().map(CorrespondenceRow::subgroup_text).collect();
    let width = left.iter().map(|s| s.chars().count()).max().unwrap_or(1).max(1);
    let mut out = format!("{:<width$} | K^H\n", "H");
    out.push_str(&format!("{}-+-{}\n", "-".repeat(width), "-".repeat(24)));
    for (l, r) in left.iter().zip(rows) {
        let pad = width - l.chars().count();
        out.push_str(&format!(
            "{l}{} | {}   [order {}, index {}{}]\n",
            " ".repeat(pad),
            r.field_text(),
            r.order(),
            r.index,
            if r.is_normal_subgroup { ", normal" } else { "" }
        ));
    }
    out
}

/// `Σ_σ σ(γ)`.
pub fn trace(g: &GaloisGroup, a: &NfElement) -> Result<Rat> {
    let k = g.field();
    let s = g.autos.iter().fold(k.from_i64(0), |acc, s| &acc + &s.apply(a));
    s.as_rational().ok_or_else(|| Error::Internal("trace is not rational".into()))
}

/// `∏_σ σ(γ)`.
pub fn norm(g: &GaloisGroup, a: &NfElement) -> Result<Rat> {
    let k = g.field();
    let s = g.autos.iter().fold(k.from_i64(1), |acc, s| &acc * &s.apply(a));
    s.as_rational().ok_or_else(|| Error::Internal("norm is not rational".into()))
}

/// Everything `galois_group_of` reports.
#[derive(Clone, Debug)]
pub struct GaloisReport {
    pub poly: QPoly,
    pub degree: usize,
    pub order: usize,
    pub name: String,
    pub solvable: bool,
    pub derived_orders: Vec<usize>,
    pub field: String,
    pub roots: Vec<String>,
    pub generators: Vec<Perm>,
    /// `None` when subgroup enumeration exceeded its cap.
    pub rows: Option<Vec<CorrespondenceRow>>,
    pub group: GaloisGroup,
}

/// Caps used by the Galois pipeline.
#[derive(Clone, Copy, Debug)]
pub struct Caps {
    pub field_degree: usize,
    pub subgroups: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { field_degree: DEFAULT_NF_CAP, subgroups: DEFAULT_SUBGROUP_CAP }
    }
}

pub fn galois_group_of(f: &QPoly) -> Result<GaloisReport> {
    galois_group_with(f, Caps::default())
}

pub fn galois_group_with(f: &QPoly, caps: Caps) -> Result<GaloisReport> {
    let sf = splitting_field_capped(f, caps.field_degree)?;
    let g = automorphism_group(&sf)?;
    let group = g.group();
    let ds = group.derived_series();
    let rows = match correspondence_table_capped(&g, caps.subgroups) {
        Ok(r) => Some(r),
        Err(Error::CapExceeded { .. }) => None,
        Err(e) => return Err(e),
    };
    let generators = group
        .small_generating_set(&group.whole())
        .into_iter()
        .map(|i| group.element(i).clone())
        .collect();
    Ok(GaloisReport {
        poly: f.clone(),
        degree: f.deg(),
        order: group.order(),
        name: group.identify(),
        solvable: ds.solvable,
        derived_orders: ds.orders(),
        field: sf.field().describe(),
        roots: sf.root_labels().iter().map(|z| z.to_string()).collect(),
        generators,
        rows,
        group: g,
    })
}

/// Why a polynomial is or is not solvable by radicals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolvabilityWitness {
    /// Degree below 5.
    SmallDegree,
    /// Irreducible of prime degree `p ≥ 5` with exactly `p - 2` real roots,
    /// so the Galois group contains a `p`-cycle and a transposition and is
    /// `S_p`. `generation_checked` records whether the closure of those two
    /// permutations was enumerated and found to have order `p!`.
    PrimeDegreeSymmetric { p: usize, generation_checked: bool },
    /// Orders along the derived series of the Galois group.
    DerivedSeries(Vec<usize>),
}

impl fmt::Display for SolvabilityWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolvabilityWitness::SmallDegree => write!(f, "degree below 5"),
            SolvabilityWitness::PrimeDegreeSymmetric { p, .. } => {
                write!(f, "irreducible, prime degree {p}, {} real roots ⇒ S_{p}", p - 2)
            }
            SolvabilityWitness::DerivedSeries(o) => {
                let parts: Vec<String> = o.iter().map(usize::to_string).collect();
                write!(f, "derived series orders [{}]", parts.join(", "))
            }
        }
    }
}

/// Solvability by radicals through the Galois group criterion.
pub fn solvable_by_radicals(f: &QPoly) -> Result<(bool, SolvabilityWitness)> {
    solvable_by_radicals_with(f, Caps::default())
}

pub fn solvable_by_radicals_with(f: &QPoly, caps: Caps) -> Result<(bool, SolvabilityWitness)> {
    let n = f.degree().filter(|&n| n >= 1).ok_or_else(|| Error::invalid("solvability of a constant"))?;
    if n <= 3 {
        // splitting fields have degree at most 6 here, so the series is cheap
        return match splitting_field_capped(f, caps.field_degree) {
            Ok(sf) => {
                let g = automorphism_group(&sf)?;
                Ok((true, SolvabilityWitness::DerivedSeries(g.group().derived_series().orders())))
            }
            Err(Error::CapExceeded { .. }) => Ok((true, SolvabilityWitness::SmallDegree)),
            Err(e) => Err(e),
        };
    }
    if n == 4 {
        return Ok((true, SolvabilityWitness::SmallDegree));
    }
    if let Some(p) = symmetric_certificate(f)? {
        return Ok((false, p));
    }
    let sf = splitting_field_capped(f, caps.field_degree)?;
    let g = automorphism_group(&sf)?;
    let ds = g.group().derived_series();
    Ok((ds.solvable, SolvabilityWitness::DerivedSeries(ds.orders())))
}

/// The prime-degree argument: irreducible of prime degree `p` with exactly
/// `p - 2` real roots has Galois group `S_p`.
pub fn symmetric_certificate(f: &QPoly) -> Result<Option<SolvabilityWitness>> {
    let p = f.deg();
    if p < 5 || !crate::exactnum::is_prime_u64(p as u64) {
        return Ok(None);
    }
    if !is_irreducible(f)? {
        return Ok(None);
    }
    if sturm_real_roots(f)? != p - 2 {
        return Ok(None);
    }
    // Cauchy gives a p-cycle; complex conjugation swaps the two non-real
    // roots. A p-cycle and any transposition generate S_p for prime p.
    let generation_checked = if p <= SYMMETRIC_CHECK_LIMIT {
        let cycle = Perm::from_images(&(2..=p).chain([1]).collect::<Vec<_>>())?;
        let transposition = Perm::from_cycles(p, &[vec![1, 2]])?;
        let order = generate(&[cycle, transposition], usize::MAX)?.order();
        let fact: usize = (1..=p).product();
        if order != fact {
            return Err(Error::Internal(format!("p-cycle and transposition generate a group of order {order}")));
        }
        true
    } else {
        false
    };
    Ok(Some(SolvabilityWitness::PrimeDegreeSymmetric { p, generation_checked }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::splitting_field;
    use crate::poly::cyclotomic;

    fn q(c: &[i64]) -> QPoly {
        QPoly::from_i64(c)
    }

    fn gal(c: &[i64]) -> GaloisGroup {
        automorphism_group(&splitting_field(&q(c)).unwrap()).unwrap()
    }

    #[test]
    fn quadratic_conjugation() {
        let g = gal(&[-2, 0, 1]);
        assert_eq!(g.order(), 2);
        let k = g.field().clone();
        let sigma = &g.automorphisms()[1];
        // a + b√2 ↦ a - b√2, with √2 the root recorded second (the positive one)
        let s2 = g.splitting().roots()[1].clone();
        assert_eq!(&s2 * &s2, k.from_i64(2));
        let x = &k.from_i64(3) + &s2.scale(&Rat::from_integer(5.into()));
        let y = &k.from_i64(3) - &s2.scale(&Rat::from_integer(5.into()));
        assert_eq!(sigma.apply(&x), y);
        assert_eq!(trace(&g, &x).unwrap(), Rat::from_integer(6.into()));
        assert_eq!(norm(&g, &x).unwrap(), Rat::from_integer((9 - 50).into()));
    }

    #[test]
    fn biquadratic_chart() {
        let f = &q(&[-2, 0, 1]) * &q(&[-3, 0, 1]);
        let g = automorphism_group(&splitting_field(&f).unwrap()).unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(g.group().identify(), "V4");
        let rows = correspondence_table(&g).unwrap();
        assert_eq!(rows.len(), 5);
        let quad: Vec<QPoly> = rows.iter().filter(|r| r.order() == 2).map(|r| r.fixed.minpoly.clone()).collect();
        for m in [q(&[-2, 0, 1]), q(&[-3, 0, 1]), q(&[-6, 0, 1])] {
            assert!(quad.contains(&m), "{m} missing from {quad:?}");
        }
        assert!(rows.iter().all(|r| r.is_normal_subgroup && r.is_galois_over_q));
    }

    #[test]
    fn pure_cubic_chart() {
        let g = gal(&[-2, 0, 0, 1]);
        assert_eq!(g.order(), 6);
        assert_eq!(g.group().identify(), "S_3");
        let rows = correspondence_table(&g).unwrap();
        assert_eq!(rows.len(), 6);
        let h = rows
            .iter()
            .find(|r| r.elements.iter().any(|p| p.to_string() == "(2 3)"))
            .unwrap();
        assert_eq!(h.order(), 2);
        assert_eq!(h.fixed.minpoly, q(&[-2, 0, 0, 1]));
        assert!(!h.is_normal_subgroup && !h.is_galois_over_q);
        // the real root is fixed by (2 3)
        let real = &g.splitting().roots()[0];
        let tau = g.automorphism_of(&h.elements[1]).unwrap();
        assert_eq!(&tau.apply(real), real);
        let a3 = rows.iter().find(|r| r.order() == 3).unwrap();
        assert_eq!(a3.fixed.minpoly, q(&[3, 0, 1]));
        assert!(a3.is_normal_subgroup);
    }

    #[test]
    fn galois_detection() {
        assert!(is_galois(&NumberField::new(&q(&[-2, 0, 1])).unwrap()).unwrap());
        assert!(!is_galois(&NumberField::new(&q(&[-2, 0, 0, 1])).unwrap()).unwrap());
        assert!(is_galois(&NumberField::new(&cyclotomic(5)).unwrap()).unwrap());
    }

    #[test]
    fn cyclotomic_groups() {
        let sf = splitting_field(&cyclotomic(5)).unwrap();
        let g = automorphism_group(&sf).unwrap();
        assert_eq!(g.group().identify(), "C_4");
        for z in sf.roots() {
            assert_eq!(trace(&g, z).unwrap(), Rat::from_integer((-1).into()));
            assert_eq!(norm(&g, z).unwrap(), Rat::one());
        }
    }

    #[test]
    fn solvability() {
        let (s, w) = solvable_by_radicals(&q(&[5, -80, 0, 0, 0, 1])).unwrap();
        assert!(!s);
        assert_eq!(w, SolvabilityWitness::PrimeDegreeSymmetric { p: 5, generation_checked: true });
        assert_eq!(w.to_string(), "irreducible, prime degree 5, 3 real roots ⇒ S_5");
        assert!(!solvable_by_radicals(&q(&[2, -4, 0, 0, 0, 1])).unwrap().0);
        assert_eq!(solvable_by_radicals(&q(&[1, 1, 1, 1, 1])).unwrap(), (true, SolvabilityWitness::SmallDegree));
        assert_eq!(
            solvable_by_radicals(&q(&[-2, 0, 0, 1])).unwrap(),
            (true, SolvabilityWitness::DerivedSeries(vec![6, 3, 1]))
        );
        let report = galois_group_of(&q(&[-2, 0, 0, 1])).unwrap();
        assert!(report.solvable);
        assert_eq!(report.derived_orders, vec![6, 3, 1]);
    }

    #[test]
    fn quartic_report() {
        let r = galois_group_of(&q(&[4, 0, 0, 0, 1])).unwrap();
        assert_eq!(r.order, 2);
        assert_eq!(r.rows.as_ref().unwrap().len(), 2);
    }
}
