//! Variety-spec strings: `quadric:n`, `segre:a x b`, `veronese:n`,
//! `pluecker:n`, `spinor:5`, `severi`, `sympl:k,m`, and
//! `project(<base>; v1; v2; ...)` with semicolon-separated rational vectors
//! spanning the projection center.

use eulersym::linalg::Subspace;
use eulersym::rat::{Rat, Rng};
use eulersym::zoo::{
    make_pluecker_rank2, make_quadric, make_segre, make_severi, make_spinor5, make_sympl_vmrt,
    make_veronese2, project, ParamVariety,
};
use eulersym::Error;
use num_bigint::BigInt;

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse { pos: self.pos, msg: msg.into() }
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn skip_ws(&mut self) {
        while self.rest().starts_with(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<(), Error> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.err(format!("expected `{token}`")))
        }
    }

    fn integer(&mut self) -> Result<i64, Error> {
        self.skip_ws();
        let start = self.pos;
        if self.rest().starts_with('-') {
            self.pos += 1;
        }
        while self.rest().starts_with(|c: char| c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.text[start..self.pos]
            .parse()
            .map_err(|_| Error::Parse { pos: start, msg: "expected an integer".into() })
    }

    fn rational(&mut self) -> Result<Rat, Error> {
        let n = self.integer()?;
        if self.eat("/") {
            let d = self.integer()?;
            if d == 0 {
                return Err(self.err("zero denominator"));
            }
            Ok(Rat::new(BigInt::from(n), BigInt::from(d)))
        } else {
            Ok(Rat::from_integer(BigInt::from(n)))
        }
    }

    fn usize_arg(&mut self) -> Result<usize, Error> {
        let v = self.integer()?;
        usize::try_from(v).map_err(|_| self.err("expected a nonnegative integer"))
    }
}

/// Parse a variety spec. Projections draw their secant probe from a stream
/// derived from the supplied seed.
pub fn parse_variety(spec: &str, seed: u64) -> Result<ParamVariety, Error> {
    let mut c = Cursor { text: spec, pos: 0 };
    let v = parse_inner(&mut c, seed)?;
    c.skip_ws();
    if c.pos != spec.len() {
        return Err(c.err("trailing input"));
    }
    Ok(v)
}

fn parse_inner(c: &mut Cursor, seed: u64) -> Result<ParamVariety, Error> {
    c.skip_ws();
    if c.eat("project") {
        c.expect("(")?;
        let base = parse_inner(c, seed)?;
        let mut vectors = Vec::new();
        while c.eat(";") {
            let mut v = vec![c.rational()?];
            while c.eat(",") {
                v.push(c.rational()?);
            }
            if v.len() != base.ambient {
                return Err(c.err(format!(
                    "center vector has length {}, ambient is {}",
                    v.len(),
                    base.ambient
                )));
            }
            vectors.push(v);
        }
        c.expect(")")?;
        if vectors.is_empty() {
            return Err(c.err("projection needs at least one center vector"));
        }
        let l = Subspace::from_vectors(base.ambient, vectors);
        let mut rng = Rng::new(seed).derive("project-secant-probe");
        project(&base, &l, &mut rng)
    } else if c.eat("quadric:") {
        make_quadric(c.usize_arg()?)
    } else if c.eat("segre:") {
        let a = c.usize_arg()?;
        c.expect("x")?;
        let b = c.usize_arg()?;
        make_segre(a, b)
    } else if c.eat("veronese:") {
        make_veronese2(c.usize_arg()?)
    } else if c.eat("pluecker:") {
        make_pluecker_rank2(c.usize_arg()?)
    } else if c.eat("spinor:") {
        let n = c.usize_arg()?;
        if n != 5 {
            return Err(c.err("only spinor:5 is modelled"));
        }
        make_spinor5()
    } else if c.eat("severi") {
        make_severi()
    } else if c.eat("sympl:") {
        let k = c.usize_arg()?;
        c.expect(",")?;
        let m = c.usize_arg()?;
        make_sympl_vmrt(k, m)
    } else {
        Err(c.err("unknown variety"))
    }
}

/// Parse a symbol-model name: `minors:n`, `sym_minors:n`, `pfaffian:m`,
/// `quadric:n`.
pub fn parse_model(spec: &str) -> Result<eulersym::euler::SymbolSystem, Error> {
    let mut c = Cursor { text: spec, pos: 0 };
    c.skip_ws();
    let sys = if c.eat("minors:") {
        eulersym::euler::minors_symbol_system(c.usize_arg()?)?
    } else if c.eat("sym_minors:") {
        eulersym::euler::sym_minors_symbol_system(c.usize_arg()?)?
    } else if c.eat("pfaffian:") {
        eulersym::euler::pfaffian_symbol_system(c.usize_arg()?)?
    } else if c.eat("quadric:") {
        eulersym::euler::quadric_symbol_system(c.usize_arg()?)?
    } else {
        return Err(c.err("unknown symbol model"));
    };
    c.skip_ws();
    if c.pos != spec.len() {
        return Err(c.err("trailing input"));
    }
    Ok(sys)
}

/// The cone with the same ambient coordinates as a symbol model's base
/// locus; used for head-on comparisons of the two computation paths.
pub fn companion_variety(model_name: &str) -> Result<ParamVariety, Error> {
    let mut c = Cursor { text: model_name, pos: 0 };
    if c.eat("minors:") {
        let n = c.usize_arg()?;
        make_segre(n, n)
    } else if c.eat("sym_minors:") {
        make_veronese2(c.usize_arg()?)
    } else if c.eat("pfaffian:") {
        make_pluecker_rank2(c.usize_arg()?)
    } else if c.eat("quadric:") {
        make_quadric(c.usize_arg()?)
    } else {
        Err(c.err("no companion variety for this model"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use eulersym::rat::rat;

    #[test]
    fn parses_basic_specs() {
        assert_eq!(parse_variety("quadric:4", 1).unwrap().ambient, 4);
        assert_eq!(parse_variety("segre:2x3", 1).unwrap().ambient, 6);
        assert_eq!(parse_variety("segre: 2 x 3", 1).unwrap().ambient, 6);
        assert_eq!(parse_variety("veronese:3", 1).unwrap().ambient, 6);
        assert_eq!(parse_variety("pluecker:5", 1).unwrap().ambient, 10);
        assert_eq!(parse_variety("spinor:5", 1).unwrap().ambient, 16);
        assert_eq!(parse_variety("severi", 1).unwrap().ambient, 27);
        assert_eq!(parse_variety("sympl:2,1", 1).unwrap().ambient, 5);
    }

    #[test]
    fn parses_projections() {
        let v = parse_variety("project(segre:3x3; 1,0,0,0,1,0,0,0,1)", 7).unwrap();
        assert_eq!(v.ambient, 8);
        let v = parse_variety("project(veronese:3; 1,0,0,1,0,1)", 7).unwrap();
        assert_eq!(v.ambient, 5);
    }

    #[test]
    fn reports_error_positions() {
        match parse_variety("segre:2y3", 1) {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 7),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_variety("frobnicate", 1), Err(Error::Parse { .. })));
        assert!(matches!(parse_variety("quadric:4 junk", 1), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_variety("project(segre:2x2; 1,0)", 1),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn rationals_in_centers() {
        let v = parse_variety("project(segre:2x2; 1/2,0,0,-3/2)", 3).unwrap();
        assert_eq!(v.ambient, 3);
        let _ = rat(0);
    }

    #[test]
    fn model_names() {
        assert_eq!(parse_model("minors:2").unwrap().dims(), vec![1, 4, 1]);
        assert_eq!(parse_model("sym_minors:2").unwrap().dims(), vec![1, 3, 1]);
        assert_eq!(parse_model("pfaffian:4").unwrap().dims(), vec![1, 6, 1]);
        assert_eq!(parse_model("quadric:5").unwrap().dims(), vec![1, 5, 1]);
        assert!(parse_model("minors:2 junk").is_err());
        assert!(companion_variety("minors:3").unwrap().ambient == 9);
    }
}
