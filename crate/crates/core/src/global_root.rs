//! Global root numbers as the finite product `W = -prod_p w_p*` over the
//! primes dividing `6 s (t^2 - s)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arithmetic::factorize;
use crate::error::{Error, Result};
use crate::families::{is_singular, l_to_f_integral, Progression};
use crate::local_tables::{tables, w_star_prime, RowHit, TableSet};
use crate::sign::Sign;

/// Per-prime factors and the global sign of one fibre `F_s(t)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootNumberBreakdown {
    #[serde(with = "crate::dec::big")]
    pub s: BigInt,
    #[serde(with = "crate::dec::big")]
    pub t: BigInt,
    #[serde(with = "crate::dec::big_vec")]
    pub factor_base: Vec<BigInt>,
    #[serde(with = "crate::dec::factor_map")]
    pub factors: Vec<(BigInt, Sign)>,
    pub total: Sign,
}

impl RootNumberBreakdown {
    pub fn factor(&self, p: &BigInt) -> Option<Sign> {
        self.factors.iter().find(|(q, _)| q == p).map(|(_, s)| *s)
    }
}

/// Evaluates fibres of a fixed `F_s`, reusing the factorization of `6 s`.
#[derive(Debug, Clone)]
pub struct FibreEvaluator<'a> {
    s: BigInt,
    base: Vec<BigInt>,
    tables: &'a TableSet,
}

impl FibreEvaluator<'static> {
    pub fn new(s: &BigInt) -> Result<Self> {
        Self::with_tables(s, tables())
    }
}

impl<'a> FibreEvaluator<'a> {
    pub fn with_tables(s: &BigInt, tables: &'a TableSet) -> Result<Self> {
        if s.is_zero() {
            return Err(Error::Zero { what: "s" });
        }
        let mut base: Vec<BigInt> = factorize(&(s * 6))?.primes().cloned().collect();
        base.sort();
        Ok(FibreEvaluator { s: s.clone(), base, tables })
    }

    pub fn s(&self) -> &BigInt {
        &self.s
    }

    /// Sorted primes dividing `6 s (t^2 - s)`.
    pub fn factor_base(&self, t: &BigInt) -> Result<Vec<BigInt>> {
        if is_singular(&self.s, t) {
            return Err(Error::SingularFibre { s: self.s.clone(), t: t.clone() });
        }
        let mut out = self.base.clone();
        let mut rest = t * t - &self.s;
        for p in &self.base {
            while (&rest % p).is_zero() {
                rest /= p;
            }
        }
        if !rest.abs().is_one() {
            out.extend(factorize(&rest)?.primes().cloned());
        }
        out.sort();
        out.dedup();
        Ok(out)
    }

    pub fn eval(&self, t: &BigInt) -> Result<RootNumberBreakdown> {
        Ok(self.eval_detail(t)?.0)
    }

    /// The breakdown plus the table row used at each prime.
    pub fn eval_detail(&self, t: &BigInt) -> Result<(RootNumberBreakdown, Vec<RowHit>)> {
        let factor_base = self.factor_base(t)?;
        let mut hits = Vec::with_capacity(factor_base.len());
        for p in &factor_base {
            hits.push(w_star_prime(self.tables, p, &self.s, t)?);
        }
        let factors: Vec<(BigInt, Sign)> =
            factor_base.iter().cloned().zip(hits.iter().map(|h| h.sign)).collect();
        let total = -factors.iter().map(|(_, s)| *s).product::<Sign>();
        let bd = RootNumberBreakdown { s: self.s.clone(), t: t.clone(), factor_base, factors, total };
        Ok((bd, hits))
    }

    pub fn sign(&self, t: &BigInt) -> Result<Sign> {
        Ok(self.eval(t)?.total)
    }
}

/// `W(F_s(t))` with its per-prime breakdown.
pub fn root_number_f(s: &BigInt, t: &BigInt) -> Result<RootNumberBreakdown> {
    if is_singular(s, t) {
        return Err(Error::SingularFibre { s: s.clone(), t: t.clone() });
    }
    FibreEvaluator::new(s)?.eval(t)
}

/// `W(L_{w,s,v}(t))`, computed on the integral model `F_S(T)`.
pub fn root_number_l(
    w: &BigRational,
    s: &BigRational,
    v: &BigRational,
    t: &BigRational,
) -> Result<RootNumberBreakdown> {
    let (big_s, big_t) = l_to_f_integral(w, s, v, t)?;
    root_number_f(&big_s, &big_t)
}

/// Sign counts over a window of a progression.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowStats {
    pub plus: u64,
    pub minus: u64,
    pub singular: u64,
}

impl WindowStats {
    pub fn merge(mut self, o: WindowStats) -> WindowStats {
        self.plus += o.plus;
        self.minus += o.minus;
        self.singular += o.singular;
        self
    }

    pub fn total(&self) -> u64 {
        self.plus + self.minus + self.singular
    }

    /// `(plus - minus) / (plus + minus + singular)`; singular fibres count
    /// in the window length but contribute nothing.
    pub fn average(&self) -> BigRational {
        let n = self.total();
        if n == 0 {
            return BigRational::zero();
        }
        BigRational::new(BigInt::from(self.plus) - BigInt::from(self.minus), BigInt::from(n))
    }
}

/// Sign counts of `W(F_s(a u + b))` for `u` in `[u_min, u_max]`, split across
/// the rayon pool.
pub fn window_stats(
    s: &BigInt,
    prog: &Progression,
    u_min: &BigInt,
    u_max: &BigInt,
) -> Result<WindowStats> {
    if u_min > u_max {
        return Err(Error::EmptyWindow { min: u_min.clone(), max: u_max.clone() });
    }
    let ev = FibreEvaluator::new(s)?;
    let len: u64 = (u_max - u_min + 1u32)
        .try_into()
        .map_err(|_| Error::Unavailable("window too large".into()))?;
    const CHUNK: u64 = 256;
    let chunks = len.div_ceil(CHUNK);
    (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut st = WindowStats::default();
            for i in c * CHUNK..((c + 1) * CHUNK).min(len) {
                let t = prog.at(&(u_min + i));
                match ev.sign(&t) {
                    Ok(Sign::Plus) => st.plus += 1,
                    Ok(Sign::Minus) => st.minus += 1,
                    Err(Error::SingularFibre { .. }) => st.singular += 1,
                    Err(e) => return Err(e),
                }
            }
            Ok(st)
        })
        .try_reduce(WindowStats::default, |a, b| Ok(a.merge(b)))
}

/// The finite-window estimate `(1/(2N+1)) sum_{|u| <= N} W(F_s(a u + b))`.
pub fn average_root_number_window(
    s: &BigInt,
    a: &BigInt,
    b: &BigInt,
    n: u64,
) -> Result<(BigRational, WindowStats)> {
    if a.is_zero() {
        return Err(Error::Zero { what: "a" });
    }
    let prog = Progression { a: a.clone(), b: b.clone() };
    let n = BigInt::from(n);
    let st = window_stats(s, &prog, &-&n, &n)?;
    Ok((st.average(), st))
}

/// Smallest `|u|` (preferring `u >= 0` on ties) with `a u + b` nonsingular.
pub fn first_nonsingular(s: &BigInt, prog: &Progression) -> BigInt {
    let mut k = BigInt::zero();
    loop {
        for u in [k.clone(), -&k] {
            if !is_singular(s, &prog.at(&u)) {
                return u;
            }
        }
        k += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn r(x: i64) -> BigRational {
        BigRational::from_integer(b(x))
    }

    fn factors(bd: &RootNumberBreakdown) -> Vec<(i64, i8)> {
        bd.factors.iter().map(|(p, s)| (p.try_into().unwrap(), s.to_i8())).collect()
    }

    #[test]
    fn f_examples() {
        let bd = root_number_f(&b(-972), &b(18)).unwrap();
        assert_eq!((bd.total, factors(&bd)), (Sign::Minus, vec![(2, 1), (3, 1)]));
        let bd = root_number_f(&b(-28812), &b(14)).unwrap();
        assert_eq!(bd.total, Sign::Minus);
        assert_eq!(factors(&bd), vec![(2, -1), (3, 1), (7, -1), (37, 1)]);
        let bd = root_number_f(&b(-3), &b(1)).unwrap();
        assert_eq!((bd.total, factors(&bd)), (Sign::Plus, vec![(2, -1), (3, 1)]));
        assert!(matches!(root_number_f(&b(4), &b(2)), Err(Error::SingularFibre { .. })));
    }

    #[test]
    fn l_examples() {
        let bd = root_number_l(&r(7), &r(-588), &r(1), &r(6)).unwrap();
        assert_eq!(bd, root_number_f(&b(-28812), &b(259)).unwrap());
        let bd = root_number_l(&r(7), &r(-588), &r(1), &r(0)).unwrap();
        assert_eq!(bd, root_number_f(&b(-28812), &b(7)).unwrap());
        let bd = root_number_l(&r(1), &r(-5), &r(3), &r(4)).unwrap();
        assert_eq!(bd, root_number_f(&b(-5), &b(19)).unwrap());
        let half = BigRational::new(b(1), b(2));
        assert!(matches!(root_number_l(&r(1), &r(-3), &half, &r(0)), Err(Error::NonIntegral(_))));
    }

    #[test]
    fn window_examples() {
        let (avg, st) = average_root_number_window(&b(-7500), &b(6000), &b(60), 50).unwrap();
        assert_eq!((avg, st.plus), (r(1), 101));
        let (avg, _) = average_root_number_window(&b(-3), &b(1), &b(1), 0).unwrap();
        assert_eq!(avg, r(1));
        let (_, st) = average_root_number_window(&b(4), &b(1), &b(0), 3).unwrap();
        assert_eq!(st.singular, 2);
        assert_eq!(st.total(), 7);
    }

    #[test]
    fn breakdown_json_round_trips() {
        let bd = root_number_f(&b(-28812), &b(14)).unwrap();
        let js = serde_json::to_string(&bd).unwrap();
        assert!(js.contains(r#""factors":{"2":-1,"3":1,"7":-1,"37":1}"#), "{js}");
        assert_eq!(serde_json::from_str::<RootNumberBreakdown>(&js).unwrap(), bd);
    }
}
