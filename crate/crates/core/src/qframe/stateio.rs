//! State files: `n=<k>` followed by `2^k` lines `<re> [<im>]`.

use crate::linalg::{format_rational, parse_rational, GaussianRational as C};

use super::{QframeError, Ray};

fn bad(line: usize, msg: impl Into<String>) -> QframeError {
    QframeError::Parse(format!("line {line}: {}", msg.into()))
}

/// Parses the amplitudes exactly as written; blank lines and `#` comments are skipped.
pub fn parse_state_vector(text: &str) -> Result<(usize, Vec<C>), QframeError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (k, head) = lines.next().ok_or_else(|| QframeError::Parse("empty state file".into()))?;
    let n: usize = head
        .strip_prefix("n=")
        .and_then(|v| v.trim().parse().ok())
        .filter(|&n| (1..=16).contains(&n))
        .ok_or_else(|| bad(k, format!("expected `n=<k>`, got `{head}`")))?;
    let mut amps = Vec::with_capacity(1 << n);
    for (k, l) in lines {
        let parts: Vec<&str> = l.split_whitespace().collect();
        let (re, im) = match parts[..] {
            [re] => (re, "0"),
            [re, im] => (re, im),
            _ => return Err(bad(k, format!("expected `<re> [<im>]`, got `{l}`"))),
        };
        let re = parse_rational(re).ok_or_else(|| bad(k, format!("bad rational `{re}`")))?;
        let im = parse_rational(im).ok_or_else(|| bad(k, format!("bad rational `{im}`")))?;
        amps.push(C::new(re, im));
    }
    if amps.len() != 1 << n {
        return Err(QframeError::Parse(format!("expected {} amplitudes for n={n}, got {}", 1 << n, amps.len())));
    }
    Ok((n, amps))
}

pub fn parse_state(text: &str) -> Result<(usize, Ray), QframeError> {
    let (n, amps) = parse_state_vector(text)?;
    Ok((n, Ray::new(amps)?))
}

pub fn format_state(s: &Ray) -> String {
    let n = s.dim().trailing_zeros();
    let mut out = format!("n={n}\n");
    for a in s.amplitudes() {
        out.push_str(&format!("{} {}\n", format_rational(&a.re), format_rational(&a.im)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bell_file() {
        let (n, s) = parse_state("n=2\n1 0\n0 0\n0 0\n1 0\n").unwrap();
        assert_eq!(n, 2);
        assert_eq!(s, Ray::from_ints(&[1, 0, 0, 1]).unwrap());
    }

    #[test]
    fn exact_amplitudes_kept() {
        let (_, v) = parse_state_vector("n=1\n# comment\n1/2 -3\n\n0 7/4\n").unwrap();
        assert_eq!(v[0], C::new(parse_rational("1/2").unwrap(), parse_rational("-3").unwrap()));
        assert_eq!(v[1], C::new(parse_rational("0").unwrap(), parse_rational("7/4").unwrap()));
    }

    #[test]
    fn round_trip() {
        let s = Ray::new(vec![C::from_ratio(2, 3), C::from_ints(0, -1)]).unwrap();
        assert_eq!(parse_state(&format_state(&s)).unwrap().1, s);
    }

    #[test]
    fn rejects_malformed() {
        assert!(parse_state("").is_err());
        assert!(parse_state("n=1\n1 0\n").is_err());
        assert!(parse_state("n=1\n1 0\n1 0 0\n").is_err());
        assert!(parse_state("n=1\n0 0\n0 0\n").is_err());
        assert!(parse_state("k=1\n1 0\n0 0\n").is_err());
        assert!(parse_state("n=1\n1/0 0\n0 0\n").is_err());
    }
}
