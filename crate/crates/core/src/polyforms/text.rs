//! Line format for forms:
//!
//! ```text
//! form n=3 k=2 pieces=4
//! piece=0 sigma=1,2 exp=0,1,0 coeff=3/4
//! ```
//!
//! `sigma` is 1-based and empty for 0-forms. Without `pieces` in the header
//! the text holds a single form and lines carry no `piece` key.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::ratlinalg::Rational;

use super::form::{sigma_index, sigmas, KForm, PiecewiseKForm};
use super::poly::{Exp, MAX_VARS};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum FormText {
    Single(KForm),
    Piecewise(PiecewiseKForm),
}

impl FormText {
    pub fn n(&self) -> usize {
        match self {
            FormText::Single(w) => w.n(),
            FormText::Piecewise(p) => p.n(),
        }
    }

    pub fn k(&self) -> usize {
        match self {
            FormText::Single(w) => w.k(),
            FormText::Piecewise(p) => p.k(),
        }
    }

    /// Spread a single form over `count` pieces.
    pub fn into_pieces(self, count: usize) -> Result<PiecewiseKForm> {
        match self {
            FormText::Single(w) => Ok(PiecewiseKForm::uniform(&w, count)),
            FormText::Piecewise(p) if p.len() == count => Ok(p),
            FormText::Piecewise(p) => {
                Err(Error::FormMismatch(format!("expected {count} pieces, found {}", p.len())))
            }
        }
    }
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn list(line: usize, s: &str) -> Result<Vec<usize>> {
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|x| x.trim().parse::<usize>().map_err(|_| perr(line, format!("bad index `{x}`")))).collect()
}

fn header_value(line: usize, fields: &[(&str, &str)], key: &str) -> Result<Option<usize>> {
    match fields.iter().find(|(k, _)| *k == key) {
        None => Ok(None),
        Some((_, v)) => v.parse().map(Some).map_err(|_| perr(line, format!("bad `{key}`"))),
    }
}

fn fields(line: usize, s: &str) -> Result<Vec<(&str, &str)>> {
    s.split_whitespace().map(|f| f.split_once('=').ok_or_else(|| perr(line, format!("expected key=value, got `{f}`")))).collect()
}

pub fn parse_form(text: &str) -> Result<FormText> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hl, head) = lines.next().ok_or_else(|| perr(1, "empty input"))?;
    let rest = head.strip_prefix("form").ok_or_else(|| perr(hl, "missing `form` header"))?;
    let hf = fields(hl, rest)?;
    let n = header_value(hl, &hf, "n")?.ok_or_else(|| perr(hl, "header needs n"))?;
    let k = header_value(hl, &hf, "k")?.ok_or_else(|| perr(hl, "header needs k"))?;
    let pieces = header_value(hl, &hf, "pieces")?;
    if n == 0 || n > MAX_VARS || k > n {
        return Err(perr(hl, format!("unsupported n={n} k={k}")));
    }
    let mut forms = vec![KForm::zero(n, k); pieces.unwrap_or(1)];
    for (ln, l) in lines {
        let fs = fields(ln, l)?;
        let mut piece = None;
        let mut sigma = None;
        let mut exp = None;
        let mut coeff = None;
        for (key, v) in fs {
            match key {
                "piece" => piece = Some(v.parse::<usize>().map_err(|_| perr(ln, "bad piece"))?),
                "sigma" => sigma = Some(list(ln, v)?),
                "exp" => exp = Some(list(ln, v)?),
                "coeff" => coeff = Some(v.parse::<Rational>().map_err(|e| perr(ln, e.to_string()))?),
                _ => return Err(perr(ln, format!("unknown key `{key}`"))),
            }
        }
        let sigma = sigma.ok_or_else(|| perr(ln, "missing sigma"))?;
        let exp = exp.ok_or_else(|| perr(ln, "missing exp"))?;
        let coeff = coeff.ok_or_else(|| perr(ln, "missing coeff"))?;
        if sigma.len() != k || sigma.contains(&0) {
            return Err(perr(ln, format!("sigma must list {k} indices from 1..{n}")));
        }
        let zero_based: Vec<usize> = sigma.iter().map(|s| s - 1).collect();
        let idx = sigma_index(n, &zero_based).ok_or_else(|| perr(ln, "sigma must be increasing and within range"))?;
        if exp.len() != n || exp.iter().any(|&e| e > u8::MAX as usize) {
            return Err(perr(ln, format!("exp must have {n} entries")));
        }
        let e = Exp::from_slice(&exp.iter().map(|&x| x as u8).collect::<Vec<_>>());
        let target = match (pieces, piece) {
            (Some(m), Some(p)) if p < m => p,
            (Some(m), Some(p)) => return Err(perr(ln, format!("piece {p} out of range 0..{m}"))),
            (Some(_), None) => return Err(perr(ln, "missing piece")),
            (None, Some(_)) => return Err(perr(ln, "piece given but header has no pieces")),
            (None, None) => 0,
        };
        forms[target].coeff_mut(idx).add_term(e, &coeff);
    }
    Ok(match pieces {
        None => FormText::Single(forms.pop().unwrap()),
        Some(_) => FormText::Piecewise(PiecewiseKForm::new(forms)),
    })
}

fn write_lines(out: &mut String, w: &KForm, piece: Option<usize>) {
    for (i, s) in sigmas(w.n(), w.k()).iter().enumerate() {
        let sig: Vec<String> = s.iter().map(|x| (x + 1).to_string()).collect();
        let mut terms: Vec<_> = w.coeff(i).terms().collect();
        terms.sort_by(|a, b| a.0.cmp(b.0));
        for (e, c) in terms {
            let ex: Vec<String> = e.slice(w.n()).iter().map(|x| x.to_string()).collect();
            if let Some(p) = piece {
                let _ = write!(out, "piece={p} ");
            }
            let _ = writeln!(out, "sigma={} exp={} coeff={c}", sig.join(","), ex.join(","));
        }
    }
}

pub fn format_form(w: &KForm) -> String {
    let mut out = format!("form n={} k={}\n", w.n(), w.k());
    write_lines(&mut out, w, None);
    out
}

pub fn format_piecewise(w: &PiecewiseKForm) -> String {
    let mut out = format!("form n={} k={} pieces={}\n", w.n(), w.k(), w.len());
    for (i, p) in w.pieces.iter().enumerate() {
        write_lines(&mut out, p, Some(i));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_single_form() {
        let t = "form n=3 k=2\nsigma=1,2 exp=0,1,0 coeff=3/4\nsigma=2,3 exp=0,0,0 coeff=-1\n";
        let FormText::Single(w) = parse_form(t).unwrap() else { panic!() };
        assert_eq!(w.coeff(0).coeff(&Exp::from_slice(&[0, 1, 0])), Rational::new(3, 4));
        assert_eq!(w.coeff(2).coeff(&Exp::zero()), Rational::from_int(-1));
        assert_eq!(parse_form(&format_form(&w)).unwrap(), FormText::Single(w));
    }

    #[test]
    fn piecewise_text() {
        let t = "form n=2 k=0 pieces=3\npiece=2 sigma= exp=1,0 coeff=2\n";
        let FormText::Piecewise(p) = parse_form(t).unwrap() else { panic!() };
        assert_eq!(p.len(), 3);
        assert!(p.pieces[0].is_zero() && !p.pieces[2].is_zero());
        assert_eq!(format_piecewise(&p), t);
    }

    #[test]
    fn rejects_bad_lines() {
        for t in [
            "",
            "form n=3\n",
            "form n=3 k=1\nsigma=4 exp=0,0,0 coeff=1\n",
            "form n=3 k=2\nsigma=2,1 exp=0,0,0 coeff=1\n",
            "form n=3 k=1\nsigma=1 exp=0,0 coeff=1\n",
            "form n=3 k=1\nsigma=1 exp=0,0,0 coeff=x\n",
            "form n=3 k=1\npiece=0 sigma=1 exp=0,0,0 coeff=1\n",
        ] {
            assert!(matches!(parse_form(t), Err(Error::Parse { .. })), "{t:?}");
        }
    }
}
