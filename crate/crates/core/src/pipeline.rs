//! Three-stage pipelined multiplier for the sextic extension.
//!
//! A single `GF(3^97)` multiplier is fed one job per slot. The input stage
//! forms both operands as ±1 combinations of the flat coefficients
//! `a0..a5` / `b0..b5`, the multiplication stage multiplies them, and the
//! output stage adds the product, scaled by a GF(9) constant, into one or
//! more of three Fp2 accumulators (six base-field registers). The job list
//! is derived symbolically: evaluation at `1, s, -1, -s, ∞`, Karatsuba over
//! `s` at each point, interpolation and reduction by `r^3 = r + 1` are
//! composed into one accumulation table.

use std::fmt::Write as _;

use crate::field397::F97Element;
use crate::gf3::Trit;
use crate::tower::{Fp2Element, Fp6Element, MulCounter, F9};

/// Pipeline depth: input, multiply, output.
pub const STAGES: usize = 3;

/// One multiplier slot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Job {
    /// Coefficients of `a0..a5` forming the left operand.
    pub left: [Trit; 6],
    /// Coefficients of `b0..b5` forming the right operand.
    pub right: [Trit; 6],
    /// `(accumulator, scalar)`: accumulator `i` collects the Fp2 coefficient
    /// of `r^i` in the result.
    pub accum: Vec<(usize, F9)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Schedule {
    jobs: Vec<Job>,
}

/// Outcome of one pipelined product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PipelineRun {
    pub result: Fp6Element,
    /// Clock slots from the first operand load to the last accumulation.
    pub slots: usize,
    /// Base multiplications performed by the multiplier stage.
    pub base_muls: u64,
    /// `(slot, job, accumulator)` for every accumulator update.
    pub writes: Vec<(usize, usize, usize)>,
}

fn f9_pow(x: F9, k: usize) -> F9 {
    (0..k).fold(F9::ONE, |acc, _| acc.mul(x))
}

/// Linear combination over the fifteen job products.
type Combo = [F9; 15];

fn combo_add(acc: &mut Combo, k: F9, x: &Combo) {
    for (a, &v) in acc.iter_mut().zip(x) {
        *a = a.add(k.mul(v));
    }
}

/// Remainder of `z^k` modulo `z^3 - z - 1`, as coefficients of `1, z, z^2`.
fn z_power_remainder(k: usize) -> [Trit; 3] {
    let mut c = [Trit::ONE, Trit::ZERO, Trit::ZERO];
    for _ in 0..k {
        // z * (c0 + c1 z + c2 z^2) with z^3 = z + 1.
        let top = c[2];
        c = [top, c[0] + top, c[1]];
    }
    c
}

/// Derives the fifteen-job schedule.
pub fn build_schedule() -> Schedule {
    let finite = [F9::ONE, F9::S, F9::NEG_ONE, F9::NEG_S];
    let mut jobs = Vec::with_capacity(15);
    let mut point_combos: Vec<Combo> = Vec::with_capacity(5);

    for point in 0..5 {
        // Coefficient of each flat input in A(point), A = sum A_i r^i,
        // A_i = a_{2i} + a_{2i+1} s. The point at infinity is A_2.
        let mut coeff = [F9::ZERO; 6];
        for i in 0..3 {
            let w = match point {
                4 if i == 2 => F9::ONE,
                4 => F9::ZERO,
                p => f9_pow(finite[p], i),
            };
            coeff[2 * i] = w;
            coeff[2 * i + 1] = w.mul(F9::S);
        }
        // A(point) = u + v s with u, v real.
        let u: [Trit; 6] = coeff.map(|k| k.re);
        let v: [Trit; 6] = coeff.map(|k| k.im);
        let sum: [Trit; 6] = std::array::from_fn(|k| u[k] + v[k]);
        let base = jobs.len();
        for pattern in [u, v, sum] {
            jobs.push(Job {
                left: pattern,
                right: pattern,
                accum: Vec::new(),
            });
        }
        // Q = uu' - vv' + s (sum·sum' - uu' - vv')
        let mut q = [F9::ZERO; 15];
        q[base] = F9::new(1, -1);
        q[base + 1] = F9::new(-1, -1);
        q[base + 2] = F9::S;
        point_combos.push(q);
    }

    // Interpolation: c_k = sum over finite points of w^{-k} Q_w, with the
    // point at infinity supplying c_4 and the wrap-around of c_4 into c_0.
    let mut coeffs: Vec<Combo> = Vec::with_capacity(5);
    for k in 0..5 {
        let mut c = [F9::ZERO; 15];
        if k < 4 {
            for (p, &w) in finite.iter().enumerate() {
                combo_add(&mut c, f9_pow(w, (4 - k) % 4), &point_combos[p]);
            }
        }
        match k {
            0 => combo_add(&mut c, F9::NEG_ONE, &point_combos[4]),
            4 => combo_add(&mut c, F9::ONE, &point_combos[4]),
            _ => {}
        }
        coeffs.push(c);
    }

    let mut reduced = [[F9::ZERO; 15]; 3];
    for (k, c) in coeffs.iter().enumerate() {
        for (i, t) in z_power_remainder(k).iter().enumerate() {
            combo_add(&mut reduced[i], F9::new(t.value() as i64, 0), c);
        }
    }

    for (j, job) in jobs.iter_mut().enumerate() {
        job.accum = (0..3)
            .filter(|&i| !reduced[i][j].is_zero())
            .map(|i| (i, reduced[i][j]))
            .collect();
    }
    Schedule { jobs }
}

fn form_operand(coeffs: &[Trit; 6], flat: &[F97Element; 6]) -> F97Element {
    let mut out = F97Element::zero();
    for (k, x) in coeffs.iter().zip(flat) {
        if !k.is_zero() {
            out += &x.scale(*k);
        }
    }
    out
}

fn fmt_operand(out: &mut String, coeffs: &[Trit; 6], name: char) {
    let mut first = true;
    for (i, k) in coeffs.iter().enumerate() {
        let sign = match k.value() {
            0 => continue,
            1 => '+',
            _ => '-',
        };
        if !first {
            out.push(' ');
        }
        let _ = write!(out, "{sign}{name}{i}");
        first = false;
    }
}

impl Schedule {
    pub fn from_jobs(jobs: Vec<Job>) -> Self {
        Schedule { jobs }
    }

    pub fn jobs(&self) -> &[Job] {
        &self.jobs
    }

    pub fn len(&self) -> usize {
        self.jobs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.jobs.is_empty()
    }

    /// One line per job: operands, then accumulator updates.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for (j, job) in self.jobs.iter().enumerate() {
            let _ = write!(s, "p{j} = (");
            fmt_operand(&mut s, &job.left, 'a');
            s.push_str(") * (");
            fmt_operand(&mut s, &job.right, 'b');
            s.push_str(") ->");
            for (i, k) in &job.accum {
                let _ = write!(s, " acc{i} {k}");
            }
            s.push('\n');
        }
        s
    }

    pub fn execute(&self, a: &Fp6Element, b: &Fp6Element) -> PipelineRun {
        self.execute_counted(a, b, &mut MulCounter::new())
    }

    /// Simulates the pipeline slot by slot. Within a slot the stages work on
    /// consecutive jobs: output on job `t-2`, multiply on `t-1`, input on `t`.
    pub fn execute_counted(&self, a: &Fp6Element, b: &Fp6Element, ctr: &mut MulCounter) -> PipelineRun {
        let fa = a.to_flat();
        let fb = b.to_flat();
        let start = ctr.base_muls();
        let mut acc: [Fp2Element; 3] = std::array::from_fn(|_| Fp2Element::zero());
        let mut operands: Option<(usize, F97Element, F97Element)> = None;
        let mut product: Option<(usize, F97Element)> = None;
        let mut writes = Vec::new();
        let mut slot = 0;
        let mut next = 0;

        while next < self.jobs.len() || operands.is_some() || product.is_some() {
            if let Some((j, p)) = product.take() {
                for &(i, k) in &self.jobs[j].accum {
                    acc[i] += &k.apply_real(&p);
                    writes.push((slot, j, i));
                }
            }
            if let Some((j, l, r)) = operands.take() {
                product = Some((j, ctr.mul(&l, &r)));
            }
            if next < self.jobs.len() {
                let job = &self.jobs[next];
                operands = Some((next, form_operand(&job.left, &fa), form_operand(&job.right, &fb)));
                next += 1;
            }
            slot += 1;
        }

        let [a0, a1, a2] = acc;
        PipelineRun {
            result: Fp6Element::new(a0, a1, a2),
            slots: slot,
            base_muls: ctr.base_muls() - start,
            writes,
        }
    }
}

pub fn execute(schedule: &Schedule, a: &Fp6Element, b: &Fp6Element) -> (Fp6Element, usize) {
    let run = schedule.execute(a, b);
    (run.result, run.slots)
}
