//! Angle arguments in radians, with exact `pi`-rational notation
//! (`pi`, `pi/6`, `pi*0.25`, `3pi/4`), since the reference parameters are
//! all rational multiples of pi.

use std::f64::consts::PI;

pub fn parse_angle(s: &str) -> Result<f64, String> {
    let s = s.trim();
    let (sign, body) = match s.strip_prefix('-') {
        Some(rest) => (-1.0, rest.trim()),
        None => (1.0, s),
    };
    if body.is_empty() {
        return Err("empty angle".into());
    }
    let value = if let Some(idx) = body.find("pi") {
        let (pre, rest) = (body[..idx].trim(), body[idx + 2..].trim());
        let pre_factor = match pre.strip_suffix('*').map(str::trim).unwrap_or(pre) {
            "" => 1.0,
            num => num
                .parse::<f64>()
                .map_err(|_| format!("bad coefficient before pi in '{s}'"))?,
        };
        let post_factor = if rest.is_empty() {
            1.0
        } else if let Some(den) = rest.strip_prefix('/') {
            let den: f64 = den
                .trim()
                .parse()
                .map_err(|_| format!("bad divisor after pi in '{s}'"))?;
            if den == 0.0 {
                return Err(format!("division by zero in '{s}'"));
            }
            1.0 / den
        } else if let Some(mul) = rest.strip_prefix('*') {
            mul.trim()
                .parse::<f64>()
                .map_err(|_| format!("bad factor after pi in '{s}'"))?
        } else {
            return Err(format!("cannot parse angle '{s}'"));
        };
        PI * pre_factor * post_factor
    } else {
        body.parse::<f64>()
            .map_err(|_| format!("cannot parse angle '{s}'"))?
    };
    Ok(sign * value)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plain_radians() {
        assert_eq!(parse_angle("0.5").unwrap(), 0.5);
        assert_eq!(parse_angle("-0.25").unwrap(), -0.25);
        assert_eq!(parse_angle("1e-3").unwrap(), 1e-3);
    }

    #[test]
    fn pi_forms() {
        assert_eq!(parse_angle("pi").unwrap(), PI);
        assert_eq!(parse_angle("pi/6").unwrap(), PI / 6.0);
        assert_eq!(parse_angle("pi*0.25").unwrap(), PI * 0.25);
        assert_eq!(parse_angle("3pi/4").unwrap(), 3.0 * PI / 4.0);
        assert_eq!(parse_angle("0.25*pi").unwrap(), 0.25 * PI);
        assert_eq!(parse_angle("-pi/4").unwrap(), -PI / 4.0);
        assert_eq!(parse_angle("pi*1e-7/4").err().is_some(), true);
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_angle("").is_err());
        assert!(parse_angle("pie").is_err());
        assert!(parse_angle("pi/0").is_err());
        assert!(parse_angle("two").is_err());
    }
}
