use super::series::SechTanhPoly;
use super::DefectFamily;

/// One deformable defect theory: a primitive BPS defect, its deformed
/// counterpart, and the fluctuation potential the deformed defect generates.
///
/// Implementations are registered by name in [`registry`] and selected at
/// runtime with [`lookup`]. The `*_closed` methods are only called with
/// `k` outside the small-`k` series branch and `k >= 0`.
pub trait DefectTheory: Send + Sync {
    fn family(&self) -> DefectFamily;

    /// Canonical registry name, as accepted on the command line.
    fn name(&self) -> &'static str;

    fn aliases(&self) -> &'static [&'static str] {
        &[]
    }

    fn description(&self) -> &'static str;

    /// The primitive defect written as a polynomial in sech and tanh.
    fn primitive(&self) -> SechTanhPoly;

    fn primitive_field(&self, y: f64) -> f64 {
        self.primitive().eval(y)
    }

    /// Scalar potential `U(v)` supporting the primitive defect.
    fn primitive_potential(&self, v: f64) -> f64;

    fn deformed_closed(&self, k: f64, y: f64) -> f64;

    fn deformed_deriv_closed(&self, k: f64, y: f64) -> f64;

    /// `v(+inf) - v(-inf)` of the deformed profile (independent of `k`).
    fn charge(&self) -> f64;

    fn mass_closed(&self, k: f64) -> f64;

    /// Taylor coefficients of the mass in powers of `k²`, starting at `k⁰`.
    fn mass_series(&self) -> &'static [f64];

    /// `v'''/v'` of the deformed defect.
    fn vqm_closed(&self, k: f64, y: f64) -> f64;

    /// `k⁰` term of the fluctuation potential (the Pöschl-Teller limit).
    fn vqm_order0(&self, y: f64) -> f64;

    /// `k²` coefficient of the fluctuation potential.
    fn vqm_order2(&self, y: f64) -> f64;

    /// Asymptotic value of the fluctuation potential, where the continuum starts.
    fn continuum_threshold(&self) -> f64;
}

/// Overflow-free pieces of `cosh 2y + cosh 2k` and friends.
///
/// All quantities are multiplied by `w = exp(-2|y|)`, so
/// `cosh 2y -> (1 + w²) / 2`, `sinh 2y -> sign(y) (1 - w²) / 2`,
/// `cosh 2k -> wc`, `sinh 2k -> ws`.
#[derive(Debug, Clone, Copy)]
struct Scaled {
    w: f64,
    wc: f64,
    ws: f64,
}

impl Scaled {
    fn new(k: f64, y: f64) -> Self {
        let a = 2.0 * y.abs();
        let up = (2.0 * k - a).exp();
        let down = (-2.0 * k - a).exp();
        Self {
            w: (-a).exp(),
            wc: 0.5 * (up + down),
            ws: 0.5 * (up - down),
        }
    }

    /// `2w (cosh 2y + cosh 2k)`.
    fn denom(&self) -> f64 {
        1.0 + self.w * self.w + 2.0 * self.wc
    }
}

fn sech(y: f64) -> f64 {
    1.0 / y.cosh()
}

/// `(tanh(y+k) - tanh(y-k)) / 2k`, which is both the deformed χ lump and the
/// derivative of the deformed φ kink.
fn tanh_difference_quotient(k: f64, y: f64) -> f64 {
    let sc = Scaled::new(k, y);
    2.0 * sc.ws / (k * sc.denom())
}

/// Deformed λφ⁴ kink, `φ_k = ln[cosh(y+k)/cosh(y-k)] / 2k = atanh(tanh y tanh k) / k`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Phi4;

impl DefectTheory for Phi4 {
    fn family(&self) -> DefectFamily {
        DefectFamily::Phi4Kink
    }

    fn name(&self) -> &'static str {
        "phi4"
    }

    fn aliases(&self) -> &'static [&'static str] {
        &["phi", "kink", "phi4-kink"]
    }

    fn description(&self) -> &'static str {
        "deformed kink of the phi^4 double well, primitive tanh(y)"
    }

    fn primitive(&self) -> SechTanhPoly {
        SechTanhPoly::monomial(0, 1, 1.0)
    }

    fn primitive_potential(&self, v: f64) -> f64 {
        0.5 * (1.0 - v * v).powi(2)
    }

    fn deformed_closed(&self, k: f64, y: f64) -> f64 {
        // std's atanh is not exactly odd, so fold the sign out
        let x = y.tanh() * k.tanh();
        x.signum() * x.abs().atanh() / k
    }

    fn deformed_deriv_closed(&self, k: f64, y: f64) -> f64 {
        tanh_difference_quotient(k, y)
    }

    fn charge(&self) -> f64 {
        2.0
    }

    fn mass_closed(&self, k: f64) -> f64 {
        (2.0 * k / (2.0 * k).tanh() - 1.0) / (k * k)
    }

    fn mass_series(&self) -> &'static [f64] {
        &[
            4.0 / 3.0,
            -16.0 / 45.0,
            128.0 / 945.0,
            -256.0 / 4725.0,
            2048.0 / 93555.0,
            -5660672.0 / 638512875.0,
            65536.0 / 18243225.0,
            -237043712.0 / 162820783125.0,
        ]
    }

    fn vqm_closed(&self, k: f64, y: f64) -> f64 {
        // With D = cosh 2y + cosh 2k the zero mode is ∝ 1/D, so
        // V = 8 sinh²2y / D² - 4 cosh 2y / D.
        let sc = Scaled::new(k, y);
        let w2 = sc.w * sc.w;
        let d = sc.denom();
        let sinh_part = (1.0 - w2) / d;
        8.0 * sinh_part * sinh_part - 4.0 * (1.0 + w2) / d
    }

    fn vqm_order0(&self, y: f64) -> f64 {
        4.0 - 6.0 * sech(y).powi(2)
    }

    fn vqm_order2(&self, y: f64) -> f64 {
        let s2 = sech(y).powi(2);
        14.0 * s2 * s2 - 12.0 * s2
    }

    fn continuum_threshold(&self) -> f64 {
        4.0
    }
}

/// Deformed λχ⁴ lump, `χ_k = (tanh(y+k) - tanh(y-k)) / 2k`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Chi4;

impl DefectTheory for Chi4 {
    fn family(&self) -> DefectFamily {
        DefectFamily::Chi4Lump
    }

    fn name(&self) -> &'static str {
        "chi4"
    }

    fn aliases(&self) -> &'static [&'static str] {
        &["chi", "lump", "chi4-lump"]
    }

    fn description(&self) -> &'static str {
        "deformed lump of the chi^4 theory, primitive sech^2(y)"
    }

    fn primitive(&self) -> SechTanhPoly {
        SechTanhPoly::monomial(2, 0, 1.0)
    }

    fn primitive_potential(&self, v: f64) -> f64 {
        2.0 * v * v * (1.0 - v)
    }

    fn deformed_closed(&self, k: f64, y: f64) -> f64 {
        tanh_difference_quotient(k, y)
    }

    fn deformed_deriv_closed(&self, k: f64, y: f64) -> f64 {
        // (sech²(y+k) - sech²(y-k)) / 2k = -2 sinh 2k sinh 2y / (k D²)
        let sc = Scaled::new(k, y);
        let d = sc.denom();
        -4.0 * y.signum() * sc.ws * (1.0 - sc.w * sc.w) / (k * d * d)
    }

    fn charge(&self) -> f64 {
        0.0
    }

    fn mass_closed(&self, k: f64) -> f64 {
        // csch³(2k)(sinh 6k + 9 sinh 2k - 24k cosh 2k) / 6k², scaled by e^{-6k}
        let x = 2.0 * k;
        let e2 = (-2.0 * x).exp();
        let e4 = e2 * e2;
        let one_minus_e2 = -(-2.0 * x).exp_m1();
        let bracket = 0.5 * ((1.0 - e4 * e2) + 9.0 * (e2 - e4) - 12.0 * x * (e2 + e4));
        8.0 * bracket / one_minus_e2.powi(3) / (6.0 * k * k)
    }

    fn mass_series(&self) -> &'static [f64] {
        &[
            16.0 / 15.0,
            -64.0 / 63.0,
            512.0 / 675.0,
            -1024.0 / 2079.0,
            5660672.0 / 19348875.0,
            -32768.0 / 200475.0,
            948174848.0 / 10854718875.0,
            -11499470848.0 / 254766637125.0,
        ]
    }

    fn vqm_closed(&self, k: f64, y: f64) -> f64 {
        4.0 - 6.0 * (sech(y - k).powi(2) + sech(y + k).powi(2))
    }

    fn vqm_order0(&self, y: f64) -> f64 {
        4.0 - 12.0 * sech(y).powi(2)
    }

    fn vqm_order2(&self, y: f64) -> f64 {
        let s2 = sech(y).powi(2);
        -12.0 * (2.0 * s2 - 3.0 * s2 * s2)
    }

    fn continuum_threshold(&self) -> f64 {
        4.0
    }
}

/// Deformed sine-Gordon lump, `η_k = [gd(y+k) - gd(y-k)] / 2k = atan(sinh k sech y) / k`.
#[derive(Debug, Clone, Copy, Default)]
pub struct SineGordon;

impl DefectTheory for SineGordon {
    fn family(&self) -> DefectFamily {
        DefectFamily::SineGordonLump
    }

    fn name(&self) -> &'static str {
        "sg"
    }

    fn aliases(&self) -> &'static [&'static str] {
        &["eta", "sine-gordon", "sg-lump"]
    }

    fn description(&self) -> &'static str {
        "deformed lump of the integrated sine-Gordon theory, primitive sech(y)"
    }

    fn primitive(&self) -> SechTanhPoly {
        SechTanhPoly::monomial(1, 0, 1.0)
    }

    fn primitive_potential(&self, v: f64) -> f64 {
        0.5 * v * v * (1.0 - v * v)
    }

    fn deformed_closed(&self, k: f64, y: f64) -> f64 {
        let a = y.abs();
        // sinh k / cosh y without overflow
        let ratio = 0.5 * ((k - a).exp() - (-k - a).exp()) / (0.5 * (1.0 + (-2.0 * a).exp()));
        ratio.atan() / k
    }

    fn deformed_deriv_closed(&self, k: f64, y: f64) -> f64 {
        // -(2/k) sinh k sinh y / (cosh 2k + cosh 2y)
        let sc = Scaled::new(k, y);
        let a = y.abs();
        let sinh_k_scaled = 0.5 * ((k - a).exp() - (-k - a).exp());
        -2.0 / k * y.signum() * sinh_k_scaled * (1.0 - sc.w) / sc.denom()
    }

    fn charge(&self) -> f64 {
        0.0
    }

    fn mass_closed(&self, k: f64) -> f64 {
        (1.0 - 2.0 * k / (2.0 * k).sinh()) / (k * k)
    }

    fn mass_series(&self) -> &'static [f64] {
        &[
            2.0 / 3.0,
            -14.0 / 45.0,
            124.0 / 945.0,
            -254.0 / 4725.0,
            292.0 / 13365.0,
            -5657908.0 / 638512875.0,
            65528.0 / 18243225.0,
            -33862354.0 / 23260111875.0,
        ]
    }

    fn vqm_closed(&self, k: f64, y: f64) -> f64 {
        // [cosh 4k - 8 cosh 2y - 4 cosh 2k (2 + 3 cosh 2y) + cosh 4y - 14]
        //   / [2 (cosh 2k + cosh 2y)²], numerator and denominator times 2w².
        let sc = Scaled::new(k, y);
        let (w, wc) = (sc.w, sc.wc);
        let w2 = w * w;
        let num =
            2.0 * (2.0 * wc * wc - w2) - 28.0 * w2 - 16.0 * w * wc - 8.0 * w * (1.0 + w2) - 12.0 * wc * (1.0 + w2)
                + 1.0
                + w2 * w2;
        let den = 4.0 * wc * wc + 4.0 * wc * (1.0 + w2) + (1.0 + w2).powi(2);
        num / den
    }

    fn vqm_order0(&self, y: f64) -> f64 {
        1.0 - 6.0 * sech(y).powi(2)
    }

    fn vqm_order2(&self, y: f64) -> f64 {
        let s2 = sech(y).powi(2);
        -2.0 * (4.0 * s2 - 7.0 * s2 * s2)
    }

    fn continuum_threshold(&self) -> f64 {
        1.0
    }
}

static PHI4: Phi4 = Phi4;
static CHI4: Chi4 = Chi4;
static SINE_GORDON: SineGordon = SineGordon;

static REGISTRY: [&dyn DefectTheory; 3] = [&PHI4, &CHI4, &SINE_GORDON];

/// Every registered theory, in canonical order (φ, χ, η).
pub fn registry() -> &'static [&'static dyn DefectTheory] {
    &REGISTRY
}

/// Finds a theory by canonical name or alias (case-insensitive).
pub fn lookup(name: &str) -> Option<&'static dyn DefectTheory> {
    let name = name.trim().to_ascii_lowercase();
    registry()
        .iter()
        .copied()
        .find(|t| t.name() == name || t.aliases().contains(&name.as_str()))
}
