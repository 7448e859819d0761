use num_complex::{Complex, Complex64};
use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive, Zero};

pub type Rational = Ratio<i64>;
/// Exact complex rational.
pub type Scalar = Complex<Rational>;

pub fn rational(num: i64, den: i64) -> Rational {
    Ratio::new(num, den)
}

pub fn real(num: i64, den: i64) -> Scalar {
    Complex::new(rational(num, den), Rational::zero())
}

pub fn int(value: i64) -> Scalar {
    real(value, 1)
}

pub fn to_complex64(s: &Scalar) -> Complex64 {
    Complex64::new(to_f64(&s.re), to_f64(&s.im))
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

fn fmt_rational(r: &Rational) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn format_scalar(s: &Scalar) -> String {
    match (s.re.is_zero(), s.im.is_zero()) {
        (_, true) => fmt_rational(&s.re),
        (true, false) => format!("{}i", fmt_rational(&s.im)),
        (false, false) => {
            let sign = if s.im < Rational::zero() { "-" } else { "+" };
            format!(
                "({}{}{}i)",
                fmt_rational(&s.re),
                sign,
                fmt_rational(&s.im.abs())
            )
        }
    }
}
