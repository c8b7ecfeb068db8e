use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::rational::{parse_rat, ExtRat, Rat};
use super::AlgebraError;

/// Exponent pair `(r, s)` of the monomial `x^r y^s`.
pub type Exponent = (u32, u32);

/// Sparse polynomial in `x, y` with rational coefficients.
///
/// Zero coefficients are never stored, so the zero polynomial has no terms.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BivarPoly {
    terms: BTreeMap<Exponent, Rat>,
}

impl BivarPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn x() -> Self {
        Self::monomial(Rat::one(), 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(Rat::one(), 0, 1)
    }

    pub fn monomial(c: Rat, r: u32, s: u32) -> Self {
        let mut p = Self::zero();
        p.add_term((r, s), c);
        p
    }

    /// The linear form `a·x + b·y`.
    pub fn linear(a: Rat, b: Rat) -> Self {
        let mut p = Self::zero();
        p.add_term((1, 0), a);
        p.add_term((0, 1), b);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Exponent, Rat)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, r: u32, s: u32) -> Rat {
        self.terms.get(&(r, s)).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn constant_term(&self) -> Rat {
        self.coeff(0, 0)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(r, s)| r + s).max()
    }

    /// Adds `c·x^r y^s`, dropping the entry if it cancels.
    pub fn add_term(&mut self, e: Exponent, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    /// Multiplies by the monomial `x^r y^s`.
    pub fn shift(&self, r: u32, s: u32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), v)| ((a + r, b + s), v.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Largest `(a, b)` with `x^a y^b` dividing every term.
    pub fn monomial_content(&self) -> Exponent {
        let mut it = self.terms.keys();
        let Some(&(mut a, mut b)) = it.next() else {
            return (0, 0);
        };
        for &(r, s) in it {
            a = a.min(r);
            b = b.min(s);
        }
        (a, b)
    }

    /// Divides by `x^a y^b`; every term must be divisible.
    pub fn unshift(&self, a: u32, b: u32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&(r, s), v)| ((r - a, s - b), v.clone()))
                .collect(),
        }
    }

    /// `φ(ex, ey)`, exactly expanded.
    pub fn substitute(&self, ex: &BivarPoly, ey: &BivarPoly) -> BivarPoly {
        let mut x_pows: Vec<BivarPoly> = vec![BivarPoly::one()];
        let mut y_pows: Vec<BivarPoly> = vec![BivarPoly::one()];
        let mut out = BivarPoly::zero();
        for (&(r, s), c) in &self.terms {
            while x_pows.len() <= r as usize {
                let next = x_pows.last().unwrap() * ex;
                x_pows.push(next);
            }
            while y_pows.len() <= s as usize {
                let next = y_pows.last().unwrap() * ey;
                y_pows.push(next);
            }
            let term = &x_pows[r as usize] * &y_pows[s as usize];
            for (e, v) in term.terms {
                out.add_term(e, v * c);
            }
        }
        out
    }

    /// Pullback along the chart `y ← x·(y + c)`.
    pub fn pullback_translated(&self, c: &Rat) -> BivarPoly {
        let mut out = BivarPoly::zero();
        if c.is_zero() {
            for (&(r, s), v) in &self.terms {
                out.add_term((r + s, s), v.clone());
            }
            return out;
        }
        let max_s = self.terms.keys().map(|&(_, s)| s).max().unwrap_or(0) as usize;
        let mut c_pows = Vec::with_capacity(max_s + 1);
        c_pows.push(Rat::one());
        for i in 1..=max_s {
            let next = &c_pows[i - 1] * c;
            c_pows.push(next);
        }
        for (&(r, s), v) in &self.terms {
            // (y + c)^s = Σ_k C(s,k) c^(s−k) y^k
            let mut binom = BigInt::one();
            for k in 0..=s {
                let coeff = v * &c_pows[(s - k) as usize] * Rat::from_integer(binom.clone());
                out.add_term((r + s, k), coeff);
                binom = binom * BigInt::from(s - k) / BigInt::from(k + 1);
            }
        }
        out
    }

    /// Pullback along the chart `x ← x·y`.
    pub fn pullback_swapped(&self) -> BivarPoly {
        let mut out = BivarPoly::zero();
        for (&(r, s), v) in &self.terms {
            out.add_term((r, r + s), v.clone());
        }
        out
    }

    /// `min` over the support of `r·γ1 + s·γ2`, with `0·∞ = 0`.
    pub fn weighted_order(&self, g1: &ExtRat, g2: &ExtRat) -> Result<ExtRat, AlgebraError> {
        if g1.is_infinite() && g2.is_infinite() {
            return Err(AlgebraError::BothWeightsInfinite);
        }
        Ok(self
            .terms
            .keys()
            .map(|&(r, s)| g1.times(r as u64) + g2.times(s as u64))
            .min()
            .unwrap_or(ExtRat::Infinity))
    }

    /// Order of vanishing at the origin: minimal total degree, `∞` for zero.
    pub fn madic_order(&self) -> ExtRat {
        match self.terms.keys().map(|&(r, s)| r + s).min() {
            Some(d) => ExtRat::int(d as i64),
            None => ExtRat::Infinity,
        }
    }

    /// Exact quotient by a nonzero homogeneous linear form, if it divides.
    fn div_linear(&self, a: &Rat, b: &Rat) -> Option<BivarPoly> {
        if b.is_zero() {
            // ℓ = a·x
            if self.terms.keys().any(|&(r, _)| r == 0) {
                return None;
            }
            let inv = a.recip();
            return Some(BivarPoly {
                terms: self.terms.iter().map(|(&(r, s), v)| ((r - 1, s), v * &inv)).collect(),
            });
        }
        // Long division by b·y + a·x, eliminating the highest y-power first.
        let inv_b = b.recip();
        let mut rem = self.clone();
        let mut quot = BivarPoly::zero();
        loop {
            let lead = rem
                .terms
                .iter()
                .filter(|(&(_, s), _)| s > 0)
                .max_by_key(|(&(r, s), _)| (s, r))
                .map(|(&e, v)| (e, v.clone()));
            let Some(((r, s), c)) = lead else { break };
            let q = &c * &inv_b;
            quot.add_term((r, s - 1), q.clone());
            rem.add_term((r, s), -c);
            rem.add_term((r + 1, s - 1), -(&q * a));
        }
        if rem.is_zero() {
            Some(quot)
        } else {
            None
        }
    }

    /// Splits `φ = ℓ^r · ψ'` with `ℓ ∤ ψ'` for a nonzero linear form `ℓ`.
    pub fn divide_out_linear(&self, l: &BivarPoly) -> Result<(u32, BivarPoly), AlgebraError> {
        let (a, b) = l.as_linear_form().ok_or(AlgebraError::NotLinear)?;
        if self.is_zero() {
            return Ok((0, BivarPoly::zero()));
        }
        let mut r = 0;
        let mut cur = self.clone();
        while let Some(q) = cur.div_linear(&a, &b) {
            debug_assert_eq!(&q * l, cur);
            cur = q;
            r += 1;
        }
        debug_assert_eq!(&l.pow(r) * &cur, *self);
        Ok((r, cur))
    }

    /// `(a, b)` when the polynomial is the nonzero form `a·x + b·y`.
    pub fn as_linear_form(&self) -> Option<(Rat, Rat)> {
        if self.is_zero() || self.terms.keys().any(|&e| e != (1, 0) && e != (0, 1)) {
            return None;
        }
        Some((self.coeff(1, 0), self.coeff(0, 1)))
    }

    /// Terms in graded-lex order: descending total degree, then descending `x`-power.
    pub fn graded_terms(&self) -> Vec<(Exponent, &Rat)> {
        let mut v: Vec<_> = self.terms.iter().map(|(e, c)| (*e, c)).collect();
        v.sort_by(|(a, _), (b, _)| (b.0 + b.1, b.0).cmp(&(a.0 + a.1, a.0)));
        v
    }
}

impl Add<&BivarPoly> for &BivarPoly {
    type Output = BivarPoly;
    fn add(self, rhs: &BivarPoly) -> BivarPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub<&BivarPoly> for &BivarPoly {
    type Output = BivarPoly;
    fn sub(self, rhs: &BivarPoly) -> BivarPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl Mul<&BivarPoly> for &BivarPoly {
    type Output = BivarPoly;
    fn mul(self, rhs: &BivarPoly) -> BivarPoly {
        let mut out = BivarPoly::zero();
        for (&(r1, s1), c1) in &self.terms {
            for (&(r2, s2), c2) in &rhs.terms {
                out.add_term((r1 + r2, s1 + s2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &BivarPoly {
    type Output = BivarPoly;
    fn neg(self) -> BivarPoly {
        BivarPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<BivarPoly> for BivarPoly {
            type Output = BivarPoly;
            fn $m(self, rhs: BivarPoly) -> BivarPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, ((r, s), c)) in self.graded_terms().into_iter().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || (r == 0 && s == 0) {
                factors.push(mag.to_string());
            }
            match r {
                0 => {}
                1 => factors.push("x".into()),
                _ => factors.push(format!("x^{r}")),
            }
            match s {
                0 => {}
                1 => factors.push("y".into()),
                _ => factors.push(format!("y^{s}")),
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err(&self, msg: impl Into<String>) -> AlgebraError {
        AlgebraError::Syntax {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn digits(&mut self) -> Result<&'a str, AlgebraError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits"))
    }

    fn exponent(&mut self) -> Result<u32, AlgebraError> {
        if self.peek() != Some(b'^') {
            return Ok(1);
        }
        self.pos += 1;
        if self.peek() == Some(b'-') {
            return Err(AlgebraError::NegativeExponent { pos: self.pos });
        }
        let at = self.pos;
        self.digits()?
            .parse::<u32>()
            .map_err(|_| AlgebraError::Syntax {
                pos: at,
                msg: "exponent out of range".into(),
            })
    }

    fn factor(&mut self, coeff: &mut Rat, ex: &mut Exponent) -> Result<(), AlgebraError> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                ex.0 += self.exponent()?;
            }
            Some(b'y') => {
                self.pos += 1;
                ex.1 += self.exponent()?;
            }
            Some(b) if b.is_ascii_digit() => {
                let num = self.digits()?;
                let mut text = num.to_string();
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    text.push('/');
                    text.push_str(self.digits()?);
                }
                let at = self.pos;
                *coeff *= parse_rat(&text).map_err(|e| AlgebraError::Syntax {
                    pos: at,
                    msg: e.to_string(),
                })?;
            }
            Some(b) => return Err(self.err(format!("unexpected '{}'", b as char))),
            None => return Err(self.err("unexpected end of input")),
        }
        Ok(())
    }

    fn term(&mut self) -> Result<(Exponent, Rat), AlgebraError> {
        let mut coeff = Rat::one();
        let mut ex = (0, 0);
        self.factor(&mut coeff, &mut ex)?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            self.factor(&mut coeff, &mut ex)?;
        }
        Ok((ex, coeff))
    }

    fn poly(&mut self) -> Result<BivarPoly, AlgebraError> {
        let mut out = BivarPoly::zero();
        let mut sign = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -Rat::one()
            }
            Some(b'+') => {
                self.pos += 1;
                Rat::one()
            }
            _ => Rat::one(),
        };
        loop {
            let (e, c) = self.term()?;
            out.add_term(e, c * &sign);
            match self.peek() {
                Some(b'+') => sign = Rat::one(),
                Some(b'-') => sign = -Rat::one(),
                None => break,
                Some(b) => return Err(self.err(format!("unexpected '{}'", b as char))),
            }
            self.pos += 1;
        }
        Ok(out)
    }
}

impl FromStr for BivarPoly {
    type Err = AlgebraError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Parser {
            src: s.as_bytes(),
            pos: 0,
        }
        .poly()
    }
}
