//! Angle parsing: plain decimals (radians, or degrees under `--degrees`) and
//! rational multiples of π written as `pi`, `pi/3`, `2pi/5`, `0.5pi`,
//! `3*pi/7`, or `-pi/2`. π-literals are always exact radians.

use std::f64::consts::PI;

pub fn parse_angle(input: &str, degrees: bool) -> Result<f64, String> {
    let s = input.trim().to_ascii_lowercase().replace(' ', "");
    if s.is_empty() {
        return Err("empty angle".into());
    }
    if let Some(v) = parse_pi_literal(&s)? {
        return Ok(v);
    }
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(if degrees { v * PI / 180.0 } else { v }),
        _ => Err(format!(
            "cannot parse angle '{input}' (use radians, degrees with --degrees, or pi literals like pi/3, 2pi/5)"
        )),
    }
}

fn parse_pi_literal(s: &str) -> Result<Option<f64>, String> {
    let Some(pos) = s.find("pi") else {
        return Ok(None);
    };
    let (head, tail) = (&s[..pos], &s[pos + 2..]);
    let num: f64 = match head.trim_end_matches('*') {
        "" => 1.0,
        "-" => -1.0,
        other => other
            .parse()
            .map_err(|_| format!("bad multiplier '{other}' in pi literal '{s}'"))?,
    };
    let den: f64 = if tail.is_empty() {
        1.0
    } else if let Some(d) = tail.strip_prefix('/') {
        let v: f64 = d
            .parse()
            .map_err(|_| format!("bad denominator '{d}' in pi literal '{s}'"))?;
        if v == 0.0 {
            return Err(format!("zero denominator in pi literal '{s}'"));
        }
        v
    } else {
        return Err(format!("unexpected trailing '{tail}' in pi literal '{s}'"));
    };
    Ok(Some(num * PI / den))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_pi_literals() {
        assert_eq!(parse_angle("pi", false).unwrap(), PI);
        assert_eq!(parse_angle("pi/3", false).unwrap(), PI / 3.0);
        assert_eq!(parse_angle("2pi/5", false).unwrap(), 2.0 * PI / 5.0);
        assert_eq!(parse_angle("0.5pi", false).unwrap(), 0.5 * PI);
        assert_eq!(parse_angle("3*pi/7", false).unwrap(), 3.0 * PI / 7.0);
        assert_eq!(parse_angle("-pi/2", false).unwrap(), -PI / 2.0);
        // pi literals ignore --degrees
        assert_eq!(parse_angle("pi/2", true).unwrap(), PI / 2.0);
    }

    #[test]
    fn parses_decimals_and_degrees() {
        assert_eq!(parse_angle("1.5707963", false).unwrap(), 1.5707963);
        assert!((parse_angle("90", true).unwrap() - PI / 2.0).abs() < 1e-15);
        assert_eq!(parse_angle("0", false).unwrap(), 0.0);
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_angle("", false).is_err());
        assert!(parse_angle("pie", false).is_err());
        assert!(parse_angle("pi/0", false).is_err());
        assert!(parse_angle("2pi/abc", false).is_err());
        assert!(parse_angle("nan", false).is_err());
    }
}
