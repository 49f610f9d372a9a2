//! Cycle-level model of a digit-serial LFSR multiplier for GF(3^97).
//!
//! Both operands are zero-padded to `ceil(97/D)` digits of `D` trits. Every
//! clock cycle the most significant remaining digit of `B` is multiplied by
//! all digits of `A` in parallel (one digit multiplier per digit of `A`),
//! the overlapping halves of neighbouring digit products are summed, and the
//! accumulator is shifted up by `D` positions with the overflow folded back
//! through the feedback taps of `x^97 = 2x^16 + 1`.
//!
//! After `ceil(97/D)` cycles the accumulator holds `a * b mod f`.

use crate::error::{Error, Result};
use crate::field397::{reduce_vec, F97Element, DEGREE, TAP};
use crate::gf3::{Trit, TritVector};
use crate::polymul::{build_circuit, Circuit, CostReport, MethodExpr};

/// Digit sizes evaluated in the reference design table.
pub const TABLE_DIGITS: [usize; 5] = [1, 2, 4, 7, 14];

/// Digit-multiplier method used for `digit` in the reference design table,
/// or `C_digit` for any other size.
pub fn table_method(digit: usize) -> MethodExpr {
    let text = match digit {
        1 => "C1",
        2 => "C2",
        4 => "C4",
        7 => "KC4",
        14 => "KKC4",
        d => return MethodExpr::classical(d.max(1)),
    };
    MethodExpr::parse(text).expect("table methods are well formed")
}

/// `ceil(97 / digit)`.
pub fn cycles_for(digit: usize) -> usize {
    DEGREE.div_ceil(digit)
}

/// Static description of one multiplier instance.
#[derive(Clone, Debug)]
pub struct LfsrConfig {
    digit: usize,
    method: MethodExpr,
    circuit: Circuit,
}

impl LfsrConfig {
    pub fn new(digit: usize, method: MethodExpr) -> Result<Self> {
        if digit == 0 || digit > DEGREE {
            return Err(Error::DigitSize(digit));
        }
        let circuit = build_circuit(&method, digit)?;
        Ok(LfsrConfig { digit, method, circuit })
    }

    /// Configuration with [`table_method`] as digit multiplier.
    pub fn with_table_method(digit: usize) -> Result<Self> {
        if digit == 0 || digit > DEGREE {
            return Err(Error::DigitSize(digit));
        }
        Self::new(digit, table_method(digit))
    }

    pub fn digit(&self) -> usize {
        self.digit
    }

    pub fn method(&self) -> &MethodExpr {
        &self.method
    }

    pub fn circuit(&self) -> &Circuit {
        &self.circuit
    }

    /// Number of digits per operand, which is also the cycle count.
    pub fn digits(&self) -> usize {
        cycles_for(self.digit)
    }

    pub fn register_len(&self) -> usize {
        self.digits() * self.digit
    }

    pub fn load<'c>(&'c self, a: &F97Element, b: &F97Element) -> LfsrState<'c> {
        LfsrState::load(self, a, b)
    }

    pub fn run(&self, a: &F97Element, b: &F97Element) -> (F97Element, usize) {
        let mut state = self.load(a, b);
        while !state.is_finished() {
            state.step().expect("not finished");
        }
        (state.acc, state.cycle)
    }

    pub fn cost_report(&self) -> LfsrCost {
        cost_report(self)
    }
}

/// Register contents of a running multiplier.
#[derive(Clone, Debug)]
pub struct LfsrState<'c> {
    cfg: &'c LfsrConfig,
    reg_a: TritVector,
    reg_b: TritVector,
    acc: F97Element,
    cycle: usize,
    a_digits: Vec<Vec<Trit>>,
}

impl<'c> LfsrState<'c> {
    pub fn load(cfg: &'c LfsrConfig, a: &F97Element, b: &F97Element) -> Self {
        let len = cfg.register_len();
        let reg_a = a.coeffs().resized(len);
        let reg_b = b.coeffs().resized(len);
        let a_digits = (0..cfg.digits())
            .map(|j| reg_a.slice(j * cfg.digit, cfg.digit).iter().collect())
            .collect();
        LfsrState {
            cfg,
            reg_a,
            reg_b,
            acc: F97Element::zero(),
            cycle: 0,
            a_digits,
        }
    }

    pub fn reg_a(&self) -> &TritVector {
        &self.reg_a
    }

    pub fn reg_b(&self) -> &TritVector {
        &self.reg_b
    }

    pub fn acc(&self) -> &F97Element {
        &self.acc
    }

    pub fn cycle(&self) -> usize {
        self.cycle
    }

    pub fn is_finished(&self) -> bool {
        self.cycle == self.cfg.digits()
    }

    /// The digit of `B` consumed by the next step.
    pub fn msd(&self) -> TritVector {
        let d = self.cfg.digit;
        self.reg_b.slice(self.reg_b.len() - d, d)
    }

    /// One clock cycle: `acc <- (acc * x^D + msd(B) * a) mod f`.
    pub fn step(&mut self) -> Result<()> {
        if self.is_finished() {
            return Err(Error::Finished { cycles: self.cycle });
        }
        let d = self.cfg.digit;
        let msd: Vec<Trit> = self.msd().iter().collect();

        // Digit products, merged by the overlap adders.
        let mut partial = TritVector::zeros(DEGREE + d);
        let mut scratch = Vec::new();
        let mut product = vec![Trit::ZERO; 2 * d - 1];
        for (j, word) in self.a_digits.iter().enumerate() {
            self.cfg.circuit.eval_with(word, &msd, &mut scratch, &mut product);
            partial.accumulate_at(&TritVector::from_trits(&product), j * d, Trit::ONE);
        }

        let mut shifted = self.acc.coeffs().shifted_up(d);
        shifted.add_assign_unchecked(&partial);
        self.acc = reduce_vec(shifted);

        let len = self.reg_b.len();
        self.reg_b = self.reg_b.shifted_up(d).resized(len);
        self.cycle += 1;
        Ok(())
    }
}

pub fn load<'c>(cfg: &'c LfsrConfig, a: &F97Element, b: &F97Element) -> LfsrState<'c> {
    LfsrState::load(cfg, a, b)
}

pub fn run(cfg: &LfsrConfig, a: &F97Element, b: &F97Element) -> (F97Element, usize) {
    cfg.run(a, b)
}

/// Combinational gate count of one multiplier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LfsrCost {
    pub digit: usize,
    pub method: String,
    pub cycles: usize,
    /// Number of digit multipliers, one per digit of `A`.
    pub instances: usize,
    /// Cost of a single pruned digit multiplier.
    pub digit_cost: CostReport,
    pub overlap_adds: usize,
    /// Adders merging the digit products into the shifted accumulator.
    pub accumulate_adds: usize,
    pub feedback_adds: usize,
    pub mul_gates: usize,
    pub add_gates: usize,
}

impl LfsrCost {
    /// Gate-cycle product, the software stand-in for an area-time figure.
    pub fn gate_cycles(&self) -> usize {
        (self.mul_gates + self.add_gates) * self.cycles
    }
}

pub fn cost_report(cfg: &LfsrConfig) -> LfsrCost {
    let d = cfg.digit;
    let n = cfg.digits();
    let digit_cost = cfg.circuit.cost();
    let overlap_adds = (n - 1) * (d - 1);

    // Occupancy of the pre-reduction word acc * x^D + partial.
    let width = DEGREE + d;
    let mut occupied = vec![false; width];
    let partial_top = (n * d + d - 1).min(DEGREE + d - 1);
    for slot in occupied.iter_mut().take(partial_top) {
        *slot = true;
    }
    let mut accumulate_adds = 0;
    for slot in occupied.iter_mut().skip(d).take(DEGREE) {
        if *slot {
            accumulate_adds += 1;
        }
        *slot = true;
    }

    // Each overflow position feeds taps at +0 and +16 below x^97.
    let mut feedback_adds = 0;
    for i in (DEGREE..width).rev() {
        if !occupied[i] {
            continue;
        }
        for target in [i - DEGREE, i - DEGREE + TAP] {
            if occupied[target] {
                feedback_adds += 1;
            }
            occupied[target] = true;
        }
    }

    LfsrCost {
        digit: d,
        method: cfg.method.to_string(),
        cycles: n,
        instances: n,
        digit_cost,
        overlap_adds,
        accumulate_adds,
        feedback_adds,
        mul_gates: n * digit_cost.mul_gates,
        add_gates: n * digit_cost.add_gates + overlap_adds + accumulate_adds + feedback_adds,
    }
}
