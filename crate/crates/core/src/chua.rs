//! Chua's circuit: parameters, state, the piecewise-linear diode, and the
//! two natural interval extensions of the first state equation.
//!
//! The two right-hand sides are the same real-valued function; they differ
//! only in the floating-point operation order of `dv_c1`. That rounding
//! difference is the entropy source of the whole cipher, so the exact
//! expression sequences here are load-bearing and must not be re-associated
//! or fused.

/// Circuit constants and diode parameters, in SI units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChuaParams {
    /// Capacitance C1 (farads).
    pub c1: f64,
    /// Capacitance C2 (farads).
    pub c2: f64,
    /// Inductance (henries).
    pub l: f64,
    /// Resistance (ohms).
    pub r: f64,
    /// Inner diode slope (siemens).
    pub ga: f64,
    /// Outer diode slope (siemens).
    pub gb: f64,
    /// Diode breakpoint voltage (volts).
    pub bp: f64,
}

impl ChuaParams {
    /// Reference parameter set for the double-scroll regime.
    pub fn reference() -> Self {
        ChuaParams {
            c1: 10e-9,
            c2: 100e-9,
            l: 19e-3,
            r: 1800.0,
            ga: -0.68e-3,
            gb: -0.37e-3,
            bp: 1.1,
        }
    }

    /// Physical realizability: positive passive elements, finite fields.
    pub fn is_valid(&self) -> bool {
        let finite = [self.c1, self.c2, self.l, self.r, self.ga, self.gb, self.bp]
            .iter()
            .all(|v| v.is_finite());
        finite && self.c1 > 0.0 && self.c2 > 0.0 && self.l > 0.0 && self.r > 0.0 && self.bp > 0.0
    }
}

/// The three circuit state variables.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChuaState {
    /// Voltage across C1 (volts).
    pub v_c1: f64,
    /// Voltage across C2 (volts).
    pub v_c2: f64,
    /// Inductor current (amperes).
    pub i_l: f64,
}

impl ChuaState {
    pub fn new(v_c1: f64, v_c2: f64, i_l: f64) -> Self {
        ChuaState { v_c1, v_c2, i_l }
    }

    pub fn is_finite(&self) -> bool {
        self.v_c1.is_finite() && self.v_c2.is_finite() && self.i_l.is_finite()
    }
}

/// Time derivative of [`ChuaState`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateDerivative {
    /// Volts per second.
    pub dv_c1: f64,
    /// Volts per second.
    pub dv_c2: f64,
    /// Amperes per second.
    pub di_l: f64,
}

impl StateDerivative {
    pub fn is_finite(&self) -> bool {
        self.dv_c1.is_finite() && self.dv_c2.is_finite() && self.di_l.is_finite()
    }
}

/// Current through Chua's diode: three-segment piecewise-linear curve with
/// slopes `ga` (inner) and `gb` (outer), breakpoints at `±bp`.
///
/// The boundary `|v| == bp` belongs to the inner segment.
pub fn diode_current(v: f64, p: &ChuaParams) -> f64 {
    if v < -p.bp {
        p.gb * v + p.bp * (p.gb - p.ga)
    } else if v <= p.bp {
        p.ga * v
    } else {
        p.gb * v + p.bp * (p.ga - p.gb)
    }
}

/// First natural interval extension: `dv_c1` evaluated as
/// `((v_c2 - v_c1) / r - i_R) / c1`.
pub fn rhs_extension_a(s: &ChuaState, p: &ChuaParams) -> StateDerivative {
    StateDerivative {
        dv_c1: ((s.v_c2 - s.v_c1) / p.r - diode_current(s.v_c1, p)) / p.c1,
        dv_c2: ((s.v_c1 - s.v_c2) / p.r + s.i_l) / p.c2,
        di_l: -s.v_c2 / p.l,
    }
}

/// Second natural interval extension: `dv_c1` evaluated as
/// `(v_c2 / r - v_c1 / r - i_R) / c1`. The other two equations are
/// identical to [`rhs_extension_a`].
pub fn rhs_extension_b(s: &ChuaState, p: &ChuaParams) -> StateDerivative {
    StateDerivative {
        dv_c1: (s.v_c2 / p.r - s.v_c1 / p.r - diode_current(s.v_c1, p)) / p.c1,
        dv_c2: ((s.v_c1 - s.v_c2) / p.r + s.i_l) / p.c2,
        di_l: -s.v_c2 / p.l,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params() -> ChuaParams {
        ChuaParams::reference()
    }

    #[test]
    fn diode_zero_at_origin() {
        assert_eq!(diode_current(0.0, &params()), 0.0);
    }

    #[test]
    fn diode_inner_branch_at_breakpoint() {
        // |v| == bp uses the inner slope: ga * 1.1
        let i = diode_current(1.1, &params());
        assert!((i - (-7.48e-4)).abs() < 1e-18, "got {i}");
    }

    #[test]
    fn diode_outer_branch() {
        // gb * 2.2 + bp * (ga - gb)
        let i = diode_current(2.2, &params());
        assert!((i - (-1.155e-3)).abs() < 1e-18, "got {i}");
    }

    #[test]
    fn diode_continuous_at_breakpoints() {
        let p = params();
        let tol = 1e-9 * (p.ga - p.gb).abs() * p.bp;
        for sign in [-1.0, 1.0] {
            let below = diode_current(sign * p.bp * (1.0 - 2f64.powi(-40)), &p);
            let above = diode_current(sign * p.bp * (1.0 + 2f64.powi(-40)), &p);
            assert!((below - above).abs() < tol);
        }
    }

    #[test]
    fn diode_odd_symmetry() {
        let p = params();
        for v in [0.3, 0.9, 1.1, 1.5, 3.7, 10.0] {
            let pos = diode_current(v, &p);
            let neg = diode_current(-v, &p);
            let ulp = 2.0 * f64::EPSILON * pos.abs();
            assert!((pos + neg).abs() <= ulp, "v={v}: {pos} vs {neg}");
        }
    }

    #[test]
    fn rhs_zero_state_is_zero() {
        let s = ChuaState::new(0.0, 0.0, 0.0);
        let da = rhs_extension_a(&s, &params());
        let db = rhs_extension_b(&s, &params());
        for d in [da, db] {
            assert_eq!(d.dv_c1, 0.0);
            assert_eq!(d.dv_c2, 0.0);
            assert_eq!(d.di_l, 0.0);
        }
    }

    #[test]
    fn rhs_hand_value() {
        // s = (0, 1, 0): dv_c1 = (1/1800) / 10e-9
        let s = ChuaState::new(0.0, 1.0, 0.0);
        let d = rhs_extension_a(&s, &params());
        let expected = (1.0 / 1800.0) / 10e-9;
        assert_eq!(d.dv_c1, expected);
        assert!((d.dv_c1 - 5.5556e4).abs() < 1.0);
    }

    #[test]
    fn extensions_identical_when_v_c1_zero() {
        // (v2 - 0)/r and v2/r - 0/r round identically
        let p = params();
        for v2 in [0.25, -0.7, 1.3e-4] {
            let s = ChuaState::new(0.0, v2, 0.1e-3);
            let da = rhs_extension_a(&s, &p);
            let db = rhs_extension_b(&s, &p);
            assert_eq!(da.dv_c1.to_bits(), db.dv_c1.to_bits());
        }
    }

    #[test]
    fn extensions_agree_within_rounding() {
        let p = params();
        let states = [
            ChuaState::new(-0.5, -0.2, 0.0),
            ChuaState::new(0.8, -1.4, 2.3e-3),
            ChuaState::new(-2.1, 0.05, -1.1e-3),
        ];
        for s in states {
            let da = rhs_extension_a(&s, &p);
            let db = rhs_extension_b(&s, &p);
            // The orderings differ by at most a few ulps of the intermediate
            // resistor-current terms; cancellation against the diode current
            // can make that large relative to the result itself, so the
            // bound is expressed against the term magnitudes.
            let terms = (s.v_c1.abs() / p.r + s.v_c2.abs() / p.r
                + diode_current(s.v_c1, &p).abs())
                / p.c1;
            let tol = 4.0 * f64::EPSILON * terms.max(da.dv_c1.abs());
            assert!(
                (da.dv_c1 - db.dv_c1).abs() <= tol,
                "state {s:?}: diff {}",
                (da.dv_c1 - db.dv_c1).abs()
            );
            // Only the first equation's ordering differs.
            assert_eq!(da.dv_c2.to_bits(), db.dv_c2.to_bits());
            assert_eq!(da.di_l.to_bits(), db.di_l.to_bits());
        }
    }

    #[test]
    fn rhs_matches_exact_rational_evaluation() {
        // Independent oracle: evaluate dv_c1 in exact rational arithmetic
        // from the f64 bit values and compare both orderings against it.
        use num::BigRational;
        use num::FromPrimitive;

        let p = params();
        let s = ChuaState::new(-0.5, -0.2, 0.0);

        let rat = |x: f64| BigRational::from_f64(x).unwrap();
        // |v_c1| <= bp, so the diode is on the inner segment.
        let i_r = rat(p.ga) * rat(s.v_c1);
        let exact = ((rat(s.v_c2) - rat(s.v_c1)) / rat(p.r) - i_r) / rat(p.c1);
        let exact_f = {
            use num::ToPrimitive;
            exact.to_f64().unwrap()
        };

        for d in [rhs_extension_a(&s, &p), rhs_extension_b(&s, &p)] {
            let rel = (d.dv_c1 - exact_f).abs() / exact_f.abs();
            assert!(rel <= 4.0 * f64::EPSILON, "dv_c1 {} vs exact {exact_f}", d.dv_c1);
        }
    }
}
