//! Sparse distributed polynomials and the Buchberger algorithm.

use std::cmp::Ordering;
use std::collections::HashSet;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::poly::{ExponentVector, Polynomial};

pub(crate) type Mono = Vec<u32>;

/// Monomial orders used internally.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) enum MonoOrder {
    /// `x1 > x2 > … > xn`, lexicographic.
    Lex,
    DegRevLex,
    /// Orders monomials of `𝕂[t, x]` (t is variable 0): total degree, then
    /// smaller weight on `x` is larger, then lex-smaller `x` part is larger.
    HomLocal(Vec<i128>),
}

fn degree(a: &[u32]) -> u64 {
    a.iter().map(|&e| e as u64).sum()
}

fn weight(w: &[i128], a: &[u32]) -> i128 {
    w.iter().zip(a).map(|(wi, &ai)| wi * ai as i128).sum()
}

impl MonoOrder {
    pub(crate) fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self {
            MonoOrder::Lex => a.cmp(b),
            MonoOrder::DegRevLex => degree(a).cmp(&degree(b)).then_with(|| {
                for i in (0..a.len()).rev() {
                    if a[i] != b[i] {
                        return b[i].cmp(&a[i]);
                    }
                }
                Ordering::Equal
            }),
            MonoOrder::HomLocal(w) => degree(a)
                .cmp(&degree(b))
                .then_with(|| weight(w, &b[1..]).cmp(&weight(w, &a[1..])))
                .then_with(|| b[1..].cmp(&a[1..])),
        }
    }
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[u32], b: &[u32]) -> Mono {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn quotient(a: &[u32], b: &[u32]) -> Mono {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

/// Polynomial with terms sorted increasingly; the leading term is last.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct EPoly {
    terms: Vec<(Mono, Rational)>,
}

impl EPoly {
    pub(crate) fn from_terms(mut terms: Vec<(Mono, Rational)>, order: &MonoOrder) -> EPoly {
        terms.sort_by(|a, b| order.cmp(&a.0, &b.0));
        let mut out: Vec<(Mono, Rational)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        EPoly { terms: out }
    }

    pub(crate) fn from_polynomial(f: &Polynomial, order: &MonoOrder) -> EPoly {
        EPoly::from_terms(
            f.terms()
                .map(|(e, c)| (e.entries().to_vec(), c.clone()))
                .collect(),
            order,
        )
    }

    pub(crate) fn to_polynomial(&self, n: usize) -> Polynomial {
        Polynomial::from_terms(
            n,
            self.terms
                .iter()
                .map(|(m, c)| (ExponentVector::new(m.clone()), c.clone())),
        )
    }

    pub(crate) fn terms(&self) -> &[(Mono, Rational)] {
        &self.terms
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn lm(&self) -> &Mono {
        &self.terms.last().expect("nonzero polynomial").0
    }

    pub(crate) fn lc(&self) -> &Rational {
        &self.terms.last().expect("nonzero polynomial").1
    }

    pub(crate) fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.iter().all(|&e| e == 0)
    }

    pub(crate) fn total_degree(&self) -> u64 {
        self.terms.iter().map(|(m, _)| degree(m)).max().unwrap_or(0)
    }

    pub(crate) fn monic(mut self) -> EPoly {
        if let Some((_, c)) = self.terms.last() {
            let inv = c.recip();
            for t in self.terms.iter_mut() {
                t.1 *= &inv;
            }
        }
        self
    }

    /// `self - c · x^m · g`.
    fn sub_scaled(&self, c: &Rational, m: &[u32], g: &EPoly, order: &MonoOrder) -> EPoly {
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let shifted = g.terms.iter().map(|(gm, gc)| {
            let mono: Mono = gm.iter().zip(m).map(|(a, b)| a + b).collect();
            (mono, gc * c)
        });
        let mut a = self.terms.iter().peekable();
        let mut b = shifted.peekable();
        loop {
            match (a.peek(), b.peek()) {
                (Some(x), Some(y)) => match order.cmp(&x.0, &y.0) {
                    Ordering::Less => out.push(a.next().expect("peeked").clone()),
                    Ordering::Greater => {
                        let (m, c) = b.next().expect("peeked");
                        out.push((m, -c));
                    }
                    Ordering::Equal => {
                        let (m, c) = b.next().expect("peeked");
                        let x = a.next().expect("peeked");
                        let v = &x.1 - c;
                        if !v.is_zero() {
                            out.push((m, v));
                        }
                    }
                },
                (Some(_), None) => out.push(a.next().expect("peeked").clone()),
                (None, Some(_)) => {
                    let (m, c) = b.next().expect("peeked");
                    out.push((m, -c));
                }
                (None, None) => break,
            }
        }
        EPoly { terms: out }
    }

    /// Homogenizes with a new variable in front.
    pub(crate) fn homogenize(&self, order: &MonoOrder) -> EPoly {
        let d = self.total_degree();
        EPoly::from_terms(
            self.terms
                .iter()
                .map(|(m, c)| {
                    let mut h = Vec::with_capacity(m.len() + 1);
                    h.push((d - degree(m)) as u32);
                    h.extend_from_slice(m);
                    (h, c.clone())
                })
                .collect(),
            order,
        )
    }

    /// Sets the first variable to 1.
    pub(crate) fn dehomogenize(&self, order: &MonoOrder) -> EPoly {
        EPoly::from_terms(
            self.terms
                .iter()
                .map(|(m, c)| (m[1..].to_vec(), c.clone()))
                .collect(),
            order,
        )
    }

    pub(crate) fn reorder(&self, order: &MonoOrder) -> EPoly {
        EPoly::from_terms(self.terms.clone(), order)
    }
}

/// Remainder of `f` on division by `basis`. With `full` unset only leading terms are reduced.
pub(crate) fn reduce(f: &EPoly, basis: &[EPoly], order: &MonoOrder, full: bool) -> EPoly {
    let mut f = f.clone();
    let mut rem: Vec<(Mono, Rational)> = Vec::new();
    while let Some((m, c)) = f.terms.last() {
        if let Some(g) = basis.iter().find(|g| divides(g.lm(), m)) {
            let q = quotient(m, g.lm());
            let coef = c / g.lc();
            f = f.sub_scaled(&coef, &q, g, order);
        } else if full {
            rem.push(f.terms.pop().expect("nonempty"));
        } else {
            break;
        }
    }
    if !full {
        return f;
    }
    rem.reverse();
    EPoly { terms: rem }
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Mono,
    sugar: u64,
}

fn s_polynomial(f: &EPoly, g: &EPoly, l: &[u32], order: &MonoOrder) -> EPoly {
    let qf = quotient(l, f.lm());
    let qg = quotient(l, g.lm());
    let zero = EPoly { terms: Vec::new() };
    let a = zero.sub_scaled(&-f.lc().recip(), &qf, f, order);
    a.sub_scaled(&g.lc().recip(), &qg, g, order)
}

fn add_to_basis(
    h: EPoly,
    s: u64,
    basis: &mut Vec<EPoly>,
    sugar: &mut Vec<u64>,
    pairs: &mut Vec<Pair>,
    pending: &mut HashSet<(usize, usize)>,
) {
    let j = basis.len();
    for (i, g) in basis.iter().enumerate() {
        if coprime(g.lm(), h.lm()) {
            continue;
        }
        let l = lcm(g.lm(), h.lm());
        let dl = degree(&l);
        let ps = (sugar[i] + dl - degree(g.lm())).max(s + dl - degree(h.lm()));
        pairs.push(Pair {
            i,
            j,
            lcm: l,
            sugar: ps,
        });
        pending.insert((i, j));
    }
    basis.push(h);
    sugar.push(s);
}

/// Reduced Gröbner basis. Elements are monic and sorted by decreasing leading monomial.
/// `max_steps` bounds the number of S-polynomial reductions.
pub(crate) fn groebner_basis(
    gens: &[EPoly],
    order: &MonoOrder,
    max_steps: u64,
) -> Result<Vec<EPoly>> {
    let mut basis: Vec<EPoly> = Vec::new();
    let mut sugar: Vec<u64> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();

    for g in gens {
        let h = reduce(g, &basis, order, true);
        if !h.is_zero() {
            let s = g.total_degree();
            add_to_basis(
                h.monic(),
                s,
                &mut basis,
                &mut sugar,
                &mut pairs,
                &mut pending,
            );
        }
    }

    let mut steps = 0u64;
    while !pairs.is_empty() {
        let best = (0..pairs.len())
            .min_by(|&a, &b| {
                pairs[a]
                    .sugar
                    .cmp(&pairs[b].sugar)
                    .then_with(|| order.cmp(&pairs[a].lcm, &pairs[b].lcm))
            })
            .expect("nonempty");
        let pair = pairs.swap_remove(best);
        pending.remove(&(pair.i, pair.j));

        let chain = (0..basis.len()).any(|k| {
            k != pair.i
                && k != pair.j
                && divides(basis[k].lm(), &pair.lcm)
                && !pending.contains(&(pair.i.min(k), pair.i.max(k)))
                && !pending.contains(&(pair.j.min(k), pair.j.max(k)))
        });
        if chain {
            continue;
        }
        steps += 1;
        if steps > max_steps {
            return Err(Error::Resource(format!(
                "Buchberger step cap of {max_steps} reached"
            )));
        }
        let s = s_polynomial(&basis[pair.i], &basis[pair.j], &pair.lcm, order);
        let h = reduce(&s, &basis, order, true);
        if !h.is_zero() {
            if h.is_constant() {
                return Ok(vec![EPoly {
                    terms: vec![(vec![0; h.lm().len()], Rational::one())],
                }]);
            }
            add_to_basis(
                h.monic(),
                pair.sugar,
                &mut basis,
                &mut sugar,
                &mut pairs,
                &mut pending,
            );
        }
    }
    Ok(interreduce(basis, order))
}

/// Minimalizes and fully reduces a Gröbner basis.
pub(crate) fn interreduce(mut basis: Vec<EPoly>, order: &MonoOrder) -> Vec<EPoly> {
    basis.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    let mut minimal: Vec<EPoly> = Vec::new();
    for g in basis {
        if !minimal.iter().any(|m| divides(m.lm(), g.lm())) {
            minimal.push(g);
        }
    }
    let mut out: Vec<EPoly> = (0..minimal.len())
        .map(|i| {
            let others: Vec<EPoly> = minimal
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, g)| g.clone())
                .collect();
            reduce(&minimal[i], &others, order, true).monic()
        })
        .collect();
    out.sort_by(|a, b| order.cmp(b.lm(), a.lm()));
    out
}

pub(crate) fn is_unit_basis(basis: &[EPoly]) -> bool {
    basis.iter().any(EPoly::is_constant)
}
