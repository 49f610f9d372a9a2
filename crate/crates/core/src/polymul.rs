//! Polynomial multiplication over GF(3).
//!
//! A [`MethodExpr`] is a recursive combination of the classical method `C_n`
//! and the Karatsuba method `K`, written outer-to-inner: `KC4` multiplies
//! length-8 operands by splitting them into two length-4 halves with
//! Karatsuba and multiplying the halves classically. The same expression can
//! be executed directly ([`recursive_mul`]) or compiled into a gate-level
//! [`Circuit`] whose gate counts model the area of a digit multiplier.
//!
//! Operands shorter than the method's natural length are zero-padded at the
//! high end, and [`build_circuit`] propagates those zeros to drop every gate
//! that only ever sees padding.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::gf3::{Trit, TritVector};

/// Dense polynomial over GF(3); index `i` holds the coefficient of `x^i`.
///
/// The length is storage size, not degree: leading zeros are allowed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: TritVector,
}

impl Poly {
    pub fn new(coeffs: TritVector) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::WrongLength { expected: 1, found: 0 });
        }
        Ok(Poly { coeffs })
    }

    pub fn zero(len: usize) -> Self {
        assert!(len >= 1, "polynomials have at least one coefficient");
        Poly {
            coeffs: TritVector::zeros(len),
        }
    }

    /// Lowest coefficient first.
    pub fn from_values(values: &[u8]) -> Result<Self> {
        Poly::new(TritVector::from_values(values)?)
    }

    pub fn random(len: usize, seed: u64) -> Self {
        Poly {
            coeffs: TritVector::random(len.max(1), seed),
        }
    }

    pub fn monomial(len: usize, exponent: usize) -> Self {
        Poly {
            coeffs: TritVector::monomial(len, exponent, Trit::ONE),
        }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn coeffs(&self) -> &TritVector {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> TritVector {
        self.coeffs
    }

    pub fn get(&self, i: usize) -> Trit {
        self.coeffs.get(i)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }

    pub fn resized(&self, len: usize) -> Poly {
        Poly {
            coeffs: self.coeffs.resized(len.max(1)),
        }
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self.coeffs)
    }
}

impl From<TritVector> for Poly {
    fn from(coeffs: TritVector) -> Self {
        Poly::new(coeffs).expect("polynomial must have at least one coefficient")
    }
}

/// Word-parallel classical product of two coefficient vectors.
pub(crate) fn schoolbook_vec(a: &TritVector, b: &TritVector) -> TritVector {
    if a.is_empty() || b.is_empty() {
        return TritVector::zeros(0);
    }
    let len = a.len() + b.len() - 1;
    let mut acc = TritVector::zeros(len);
    let mut shifted = a.resized(len);
    for i in 0..b.len() {
        let t = b.get(i);
        if !t.is_zero() {
            acc.accumulate(&shifted, t);
        }
        shifted.shift_up_one();
    }
    acc
}

/// Classical O(n^2) product; the reference every other path is checked against.
pub fn schoolbook_mul(a: &Poly, b: &Poly) -> Poly {
    Poly {
        coeffs: schoolbook_vec(&a.coeffs, &b.coeffs),
    }
}

/// One level of a method expression.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Factor {
    /// Karatsuba over two halves.
    Karatsuba,
    /// Classical multiplication of `n`-term operands.
    Classical(usize),
}

impl Factor {
    pub fn length(self) -> usize {
        match self {
            Factor::Karatsuba => 2,
            Factor::Classical(n) => n,
        }
    }

    /// Number of sub-products this level issues.
    pub fn products(self) -> usize {
        match self {
            Factor::Karatsuba => 3,
            Factor::Classical(n) => n * n,
        }
    }
}

/// A method from the recursive set built from `K` and `C_n`, outermost first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MethodExpr {
    factors: Vec<Factor>,
}

impl MethodExpr {
    pub fn new(factors: Vec<Factor>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::MethodParse {
                position: 0,
                message: "empty method".into(),
            });
        }
        if factors.contains(&Factor::Classical(0)) {
            return Err(Error::MethodParse {
                position: 0,
                message: "classical length must be at least 1".into(),
            });
        }
        Ok(MethodExpr { factors })
    }

    pub fn classical(n: usize) -> Self {
        MethodExpr::new(vec![Factor::Classical(n)]).expect("n >= 1")
    }

    pub fn karatsuba() -> Self {
        MethodExpr {
            factors: vec![Factor::Karatsuba],
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        text.parse()
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn operand_length(&self) -> usize {
        self.factors.iter().map(|f| f.length()).product()
    }

    /// Base multiplications of the unpruned method.
    pub fn base_products(&self) -> usize {
        self.factors.iter().map(|f| f.products()).product()
    }

    /// The recursive combination `self` over `inner`.
    pub fn compose(&self, inner: &MethodExpr) -> MethodExpr {
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&inner.factors);
        MethodExpr { factors }
    }
}

impl FromStr for MethodExpr {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let bytes = text.as_bytes();
        let mut factors = Vec::new();
        let mut pos = 0;
        if bytes.is_empty() {
            return Err(Error::MethodParse {
                position: 0,
                message: "empty method".into(),
            });
        }
        while pos < bytes.len() {
            match bytes[pos] {
                b'K' => {
                    factors.push(Factor::Karatsuba);
                    pos += 1;
                }
                b'C' => {
                    let start = pos + 1;
                    let end = start + bytes[start..].iter().take_while(|b| b.is_ascii_digit()).count();
                    if end == start {
                        return Err(Error::MethodParse {
                            position: start,
                            message: "expected digits after 'C'".into(),
                        });
                    }
                    let n: usize = text[start..end].parse().map_err(|_| Error::MethodParse {
                        position: start,
                        message: "classical length out of range".into(),
                    })?;
                    if n == 0 {
                        return Err(Error::MethodParse {
                            position: start,
                            message: "classical length must be at least 1".into(),
                        });
                    }
                    factors.push(Factor::Classical(n));
                    pos = end;
                }
                _ => {
                    let found = text[pos..].chars().next().unwrap_or('?');
                    return Err(Error::MethodParse {
                        position: pos,
                        message: format!("unexpected {found:?}, expected 'K' or 'C<n>'"),
                    });
                }
            }
        }
        Ok(MethodExpr { factors })
    }
}

impl fmt::Display for MethodExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for factor in &self.factors {
            match factor {
                Factor::Karatsuba => f.write_str("K")?,
                Factor::Classical(n) => write!(f, "C{n}")?,
            }
        }
        Ok(())
    }
}

fn rec_mul(factors: &[Factor], a: &TritVector, b: &TritVector) -> TritVector {
    let Some((&outer, rest)) = factors.split_first() else {
        return TritVector::from_trits(&[a.get(0) * b.get(0)]);
    };
    let n: usize = rest.iter().map(|f| f.length()).product();
    let m = outer.length();
    let mut out = TritVector::zeros(2 * m * n - 1);
    match outer {
        Factor::Karatsuba => {
            let (a0, a1) = (a.slice(0, n), a.slice(n, n));
            let (b0, b1) = (b.slice(0, n), b.slice(n, n));
            let low = rec_mul(rest, &a0, &b0);
            let high = rec_mul(rest, &a1, &b1);
            let sa = a0.add(&a1).expect("equal halves");
            let sb = b0.add(&b1).expect("equal halves");
            let mut mid = rec_mul(rest, &sa, &sb);
            mid.accumulate(&low, Trit::TWO);
            mid.accumulate(&high, Trit::TWO);
            out.accumulate_at(&low, 0, Trit::ONE);
            out.accumulate_at(&mid, n, Trit::ONE);
            out.accumulate_at(&high, 2 * n, Trit::ONE);
        }
        Factor::Classical(_) => {
            let ablocks: Vec<_> = (0..m).map(|i| a.slice(i * n, n)).collect();
            let bblocks: Vec<_> = (0..m).map(|i| b.slice(i * n, n)).collect();
            for (i, ai) in ablocks.iter().enumerate() {
                for (j, bj) in bblocks.iter().enumerate() {
                    out.accumulate_at(&rec_mul(rest, ai, bj), (i + j) * n, Trit::ONE);
                }
            }
        }
    }
    out
}

/// Multiplies two operands of exactly `method.operand_length()` coefficients
/// by executing the method recursively.
pub fn recursive_mul(method: &MethodExpr, a: &Poly, b: &Poly) -> Result<Poly> {
    let n = method.operand_length();
    for p in [a, b] {
        if p.len() != n {
            return Err(Error::WrongLength {
                expected: n,
                found: p.len(),
            });
        }
    }
    Ok(Poly {
        coeffs: rec_mul(&method.factors, &a.coeffs, &b.coeffs),
    })
}

/// A value flowing through a circuit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Wire {
    /// Coefficient `i` of the first operand.
    A(usize),
    /// Coefficient `i` of the second operand.
    B(usize),
    /// Output of gate `k`.
    Gate(usize),
}

impl fmt::Display for Wire {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Wire::A(i) => write!(f, "a{i}"),
            Wire::B(i) => write!(f, "b{i}"),
            Wire::Gate(k) => write!(f, "g{k}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gate {
    Zero,
    Add(Wire, Wire),
    Sub(Wire, Wire),
    Neg(Wire),
    Mul(Wire, Wire),
}

impl Gate {
    fn operands(&self) -> impl Iterator<Item = Wire> {
        let (x, y) = match *self {
            Gate::Zero => (None, None),
            Gate::Neg(x) => (Some(x), None),
            Gate::Add(x, y) | Gate::Sub(x, y) | Gate::Mul(x, y) => (Some(x), Some(y)),
        };
        x.into_iter().chain(y)
    }

    fn map(self, mut f: impl FnMut(Wire) -> Wire) -> Gate {
        match self {
            Gate::Zero => Gate::Zero,
            Gate::Neg(x) => Gate::Neg(f(x)),
            Gate::Add(x, y) => Gate::Add(f(x), f(y)),
            Gate::Sub(x, y) => Gate::Sub(f(x), f(y)),
            Gate::Mul(x, y) => Gate::Mul(f(x), f(y)),
        }
    }
}

/// Straight-line GF(3) circuit multiplying two `length`-term polynomials.
///
/// Gates are stored in topological order: gate `k` only reads inputs and
/// gates with a smaller index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    method: MethodExpr,
    length: usize,
    gates: Vec<Gate>,
    outputs: Vec<Wire>,
}

/// Gate-count summary of a circuit. Negations are free, being a swap of the
/// two bit planes.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CostReport {
    pub mul_gates: usize,
    /// ADD and SUB gates.
    pub add_gates: usize,
    /// Longest chain of ADD/SUB/MUL gates from an input to an output.
    pub depth: usize,
}

struct Builder {
    gates: Vec<Gate>,
}

impl Builder {
    fn push(&mut self, gate: Gate) -> Wire {
        self.gates.push(gate);
        Wire::Gate(self.gates.len() - 1)
    }

    fn place(&mut self, slots: &mut [Option<Wire>], offset: usize, wires: &[Wire]) {
        for (k, &w) in wires.iter().enumerate() {
            let slot = &mut slots[offset + k];
            *slot = Some(match *slot {
                None => w,
                Some(prev) => self.push(Gate::Add(prev, w)),
            });
        }
    }

    fn finish(&mut self, slots: Vec<Option<Wire>>) -> Vec<Wire> {
        slots
            .into_iter()
            .map(|s| s.unwrap_or_else(|| self.push(Gate::Zero)))
            .collect()
    }

    fn mul(&mut self, factors: &[Factor], a: &[Wire], b: &[Wire]) -> Vec<Wire> {
        let Some((&outer, rest)) = factors.split_first() else {
            return vec![self.push(Gate::Mul(a[0], b[0]))];
        };
        let n: usize = rest.iter().map(|f| f.length()).product();
        let m = outer.length();
        let mut slots = vec![None; 2 * m * n - 1];
        match outer {
            Factor::Karatsuba => {
                let (a0, a1) = a.split_at(n);
                let (b0, b1) = b.split_at(n);
                let low = self.mul(rest, a0, b0);
                let high = self.mul(rest, a1, b1);
                let sa: Vec<_> = (0..n).map(|i| self.push(Gate::Add(a0[i], a1[i]))).collect();
                let sb: Vec<_> = (0..n).map(|i| self.push(Gate::Add(b0[i], b1[i]))).collect();
                let cross = self.mul(rest, &sa, &sb);
                let mid: Vec<_> = (0..cross.len())
                    .map(|k| {
                        let t = self.push(Gate::Sub(cross[k], low[k]));
                        self.push(Gate::Sub(t, high[k]))
                    })
                    .collect();
                self.place(&mut slots, 0, &low);
                self.place(&mut slots, n, &mid);
                self.place(&mut slots, 2 * n, &high);
            }
            Factor::Classical(_) => {
                for i in 0..m {
                    for j in 0..m {
                        let p = self.mul(rest, &a[i * n..(i + 1) * n], &b[j * n..(j + 1) * n]);
                        self.place(&mut slots, (i + j) * n, &p);
                    }
                }
            }
        }
        self.finish(slots)
    }
}

/// Compiles `method` into a circuit for `actual_length`-term operands.
///
/// Operand positions at or beyond `actual_length` are bound to ZERO gates,
/// constants are propagated until nothing changes, and every gate that no
/// longer reaches an output is removed.
pub fn build_circuit(method: &MethodExpr, actual_length: usize) -> Result<Circuit> {
    let n = method.operand_length();
    if actual_length == 0 || actual_length > n {
        return Err(Error::UnsupportedLength {
            actual: actual_length,
            operand_length: n,
        });
    }
    let mut builder = Builder { gates: Vec::new() };
    let mut a = Vec::with_capacity(n);
    let mut b = Vec::with_capacity(n);
    for i in 0..n {
        if i < actual_length {
            a.push(Wire::A(i));
            b.push(Wire::B(i));
        } else {
            a.push(builder.push(Gate::Zero));
            b.push(builder.push(Gate::Zero));
        }
    }
    let mut outputs = builder.mul(&method.factors, &a, &b);
    outputs.truncate(2 * actual_length - 1);
    let mut circuit = Circuit {
        method: method.clone(),
        length: actual_length,
        gates: builder.gates,
        outputs,
    };
    while circuit.prune_pass() {}
    Ok(circuit)
}

/// The full circuit for `method.operand_length()`-term operands.
pub fn build_unpruned(method: &MethodExpr) -> Circuit {
    build_circuit(method, method.operand_length()).expect("full length is always valid")
}

enum Folded {
    Zero,
    Wire(Wire),
}

impl Circuit {
    /// One constant-propagation and dead-gate sweep; returns whether the
    /// circuit changed.
    fn prune_pass(&mut self) -> bool {
        let mut gates = Vec::with_capacity(self.gates.len());
        let mut folded: Vec<Folded> = Vec::with_capacity(self.gates.len());
        let resolve = |w: Wire, folded: &[Folded]| -> Option<Wire> {
            match w {
                Wire::Gate(k) => match folded[k] {
                    Folded::Zero => None,
                    Folded::Wire(w) => Some(w),
                },
                w => Some(w),
            }
        };
        for gate in &self.gates {
            let mut emit = |g: Gate| {
                gates.push(g);
                Folded::Wire(Wire::Gate(gates.len() - 1))
            };
            let f = match *gate {
                Gate::Zero => Folded::Zero,
                Gate::Neg(x) => match resolve(x, &folded) {
                    None => Folded::Zero,
                    Some(x) => emit(Gate::Neg(x)),
                },
                Gate::Add(x, y) => match (resolve(x, &folded), resolve(y, &folded)) {
                    (None, None) => Folded::Zero,
                    (Some(w), None) | (None, Some(w)) => Folded::Wire(w),
                    (Some(x), Some(y)) => emit(Gate::Add(x, y)),
                },
                Gate::Sub(x, y) => match (resolve(x, &folded), resolve(y, &folded)) {
                    (None, None) => Folded::Zero,
                    (Some(x), None) => Folded::Wire(x),
                    (None, Some(y)) => emit(Gate::Neg(y)),
                    (Some(x), Some(y)) => emit(Gate::Sub(x, y)),
                },
                Gate::Mul(x, y) => match (resolve(x, &folded), resolve(y, &folded)) {
                    (Some(x), Some(y)) => emit(Gate::Mul(x, y)),
                    _ => Folded::Zero,
                },
            };
            folded.push(f);
        }
        let mut outputs: Vec<Wire> = self
            .outputs
            .iter()
            .map(|&w| {
                resolve(w, &folded).unwrap_or_else(|| {
                    gates.push(Gate::Zero);
                    Wire::Gate(gates.len() - 1)
                })
            })
            .collect();

        // Keep only gates that reach an output.
        let mut live = vec![false; gates.len()];
        for w in &outputs {
            if let Wire::Gate(k) = *w {
                live[k] = true;
            }
        }
        for k in (0..gates.len()).rev() {
            if live[k] {
                for w in gates[k].operands() {
                    if let Wire::Gate(j) = w {
                        live[j] = true;
                    }
                }
            }
        }
        let mut renumber = vec![usize::MAX; gates.len()];
        let mut kept = Vec::new();
        for (k, gate) in gates.into_iter().enumerate() {
            if live[k] {
                renumber[k] = kept.len();
                kept.push(gate.map(|w| match w {
                    Wire::Gate(j) => Wire::Gate(renumber[j]),
                    w => w,
                }));
            }
        }
        for w in &mut outputs {
            if let Wire::Gate(j) = *w {
                *w = Wire::Gate(renumber[j]);
            }
        }
        let changed = kept != self.gates || outputs != self.outputs;
        self.gates = kept;
        self.outputs = outputs;
        changed
    }

    pub fn method(&self) -> &MethodExpr {
        &self.method
    }

    /// Number of coefficients per operand.
    pub fn length(&self) -> usize {
        self.length
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn outputs(&self) -> &[Wire] {
        &self.outputs
    }

    /// Evaluates the circuit on raw coefficient slices.
    pub fn eval_trits(&self, a: &[Trit], b: &[Trit], out: &mut [Trit]) {
        let mut values = vec![Trit::ZERO; self.gates.len()];
        self.eval_with(a, b, &mut values, out);
    }

    /// Like [`Circuit::eval_trits`] but reuses `scratch` for gate values.
    pub fn eval_with(&self, a: &[Trit], b: &[Trit], scratch: &mut Vec<Trit>, out: &mut [Trit]) {
        scratch.clear();
        scratch.resize(self.gates.len(), Trit::ZERO);
        let get = |w: Wire, v: &[Trit]| match w {
            Wire::A(i) => a[i],
            Wire::B(i) => b[i],
            Wire::Gate(k) => v[k],
        };
        for k in 0..self.gates.len() {
            scratch[k] = match self.gates[k] {
                Gate::Zero => Trit::ZERO,
                Gate::Neg(x) => -get(x, scratch),
                Gate::Add(x, y) => get(x, scratch) + get(y, scratch),
                Gate::Sub(x, y) => get(x, scratch) - get(y, scratch),
                Gate::Mul(x, y) => get(x, scratch) * get(y, scratch),
            };
        }
        for (o, &w) in out.iter_mut().zip(&self.outputs) {
            *o = get(w, scratch);
        }
    }

    pub fn cost(&self) -> CostReport {
        let mut depth = vec![0usize; self.gates.len()];
        let level = |w: Wire, d: &[usize]| match w {
            Wire::Gate(k) => d[k],
            _ => 0,
        };
        let mut report = CostReport::default();
        for k in 0..self.gates.len() {
            let gate = self.gates[k];
            let below = gate.operands().map(|w| level(w, &depth)).max().unwrap_or(0);
            depth[k] = match gate {
                Gate::Zero | Gate::Neg(_) => below,
                Gate::Mul(..) => {
                    report.mul_gates += 1;
                    below + 1
                }
                Gate::Add(..) | Gate::Sub(..) => {
                    report.add_gates += 1;
                    below + 1
                }
            };
        }
        report.depth = self.outputs.iter().map(|&w| level(w, &depth)).max().unwrap_or(0);
        report
    }

    /// Deterministic text listing, one `g<k> = <op> <operand> <operand>`
    /// line per gate followed by one `c<k> = <wire>` line per output.
    pub fn dump(&self) -> String {
        let mut s = format!("# {} length {}\n", self.method, self.length);
        for (k, gate) in self.gates.iter().enumerate() {
            let line = match gate {
                Gate::Zero => format!("g{k} = zero"),
                Gate::Neg(x) => format!("g{k} = neg {x}"),
                Gate::Add(x, y) => format!("g{k} = add {x} {y}"),
                Gate::Sub(x, y) => format!("g{k} = sub {x} {y}"),
                Gate::Mul(x, y) => format!("g{k} = mul {x} {y}"),
            };
            s.push_str(&line);
            s.push('\n');
        }
        for (k, w) in self.outputs.iter().enumerate() {
            s.push_str(&format!("c{k} = {w}\n"));
        }
        s
    }
}

/// Evaluates `c` on two polynomials of exactly `c.length()` coefficients.
pub fn eval_circuit(c: &Circuit, a: &Poly, b: &Poly) -> Result<Poly> {
    for p in [a, b] {
        if p.len() != c.length {
            return Err(Error::WrongLength {
                expected: c.length,
                found: p.len(),
            });
        }
    }
    let at: Vec<Trit> = a.coeffs.iter().collect();
    let bt: Vec<Trit> = b.coeffs.iter().collect();
    let mut out = vec![Trit::ZERO; c.outputs.len()];
    c.eval_trits(&at, &bt, &mut out);
    Ok(Poly {
        coeffs: TritVector::from_trits(&out),
    })
}

pub fn cost(c: &Circuit) -> CostReport {
    c.cost()
}
