//! Recursive-descent parser for group specs.
//!
//! ```text
//! spec    := "quaternion8"
//!          | ("cyclic" | "dihedral" | "symmetric" | "heisenberg") "(" int ")"
//!          | "abelian" "(" (list | int) ")"
//!          | "product" "(" spec "," spec ")"
//!          | "semidirect" "(" spec ";" spec ";" matrix ("," matrix)* ")"
//! matrix  := "[" list ("," list)* "]"
//! list    := "[" int ("," int)* "]"
//! ```
//!
//! Whitespace between tokens is ignored. Positions in errors are byte
//! offsets into the original text.

use commhier::group::{ActionMatrix, GroupSpec};
use commhier::{Error, Result};

const NAMES: &str =
    "one of cyclic, abelian, dihedral, symmetric, heisenberg, product, semidirect, quaternion8";

pub fn parse_spec(text: &str) -> Result<GroupSpec> {
    let mut p = Parser { src: text, pos: 0 };
    let spec = p.spec()?;
    p.skip_ws();
    if p.pos < text.len() {
        return Err(p.error("end of input"));
    }
    Ok(spec)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn error(&mut self, expected: &str) -> Error {
        self.skip_ws();
        let found = match self.src[self.pos..].chars().next() {
            None => "end of input".to_string(),
            Some(_) => {
                let tok: String = self.src[self.pos..]
                    .chars()
                    .take_while(|c| c.is_alphanumeric() || *c == '_')
                    .collect();
                if tok.is_empty() {
                    format!("'{}'", self.src[self.pos..].chars().next().unwrap())
                } else {
                    format!("'{tok}'")
                }
            }
        };
        Error::Parse {
            position: self.pos,
            expected: expected.to_string(),
            found,
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(self.error(&format!("'{c}'")))
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> &'a str {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let len = rest
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
            .unwrap_or(rest.len());
        self.pos += len;
        &rest[..len]
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.src[start..];
        let sign = usize::from(rest.starts_with('-'));
        let digits = rest[sign..]
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(rest.len() - sign);
        if digits == 0 {
            return Err(self.error("an integer"));
        }
        let text = &rest[..sign + digits];
        let value = text.parse::<i64>().map_err(|_| Error::Parse {
            position: start,
            expected: "an integer that fits in 64 bits".into(),
            found: format!("'{text}'"),
        })?;
        self.pos += sign + digits;
        Ok(value)
    }

    fn nat(&mut self) -> Result<u64> {
        let start = {
            self.skip_ws();
            self.pos
        };
        let v = self.int()?;
        u64::try_from(v).map_err(|_| Error::Parse {
            position: start,
            expected: "a non-negative integer".into(),
            found: format!("'{v}'"),
        })
    }

    fn list(&mut self) -> Result<Vec<i64>> {
        self.expect('[')?;
        let mut out = vec![self.int()?];
        while self.eat(',') {
            out.push(self.int()?);
        }
        self.expect(']')?;
        Ok(out)
    }

    fn nat_list(&mut self) -> Result<Vec<u64>> {
        self.skip_ws();
        let start = self.pos;
        self.list()?
            .into_iter()
            .map(|v| {
                u64::try_from(v).map_err(|_| Error::Parse {
                    position: start,
                    expected: "non-negative invariant factors".into(),
                    found: format!("'{v}'"),
                })
            })
            .collect()
    }

    fn matrix(&mut self) -> Result<ActionMatrix> {
        self.expect('[')?;
        let mut rows = vec![self.list()?];
        while self.eat(',') {
            rows.push(self.list()?);
        }
        self.expect(']')?;
        Ok(rows)
    }

    fn spec(&mut self) -> Result<GroupSpec> {
        self.skip_ws();
        let start = self.pos;
        let name = self.ident();
        if name == "quaternion8" {
            return Ok(GroupSpec::Quaternion8);
        }
        let known = [
            "cyclic",
            "abelian",
            "dihedral",
            "symmetric",
            "heisenberg",
            "product",
            "semidirect",
        ];
        if !known.contains(&name) {
            self.pos = start;
            return Err(self.error(NAMES));
        }
        self.expect('(')?;
        let spec = match name {
            "cyclic" => GroupSpec::Cyclic(self.nat()?),
            "dihedral" => GroupSpec::Dihedral(self.nat()?),
            "symmetric" => GroupSpec::Symmetric(self.nat()?),
            "heisenberg" => GroupSpec::Heisenberg(self.nat()?),
            "abelian" => {
                if self.peek() == Some('[') {
                    GroupSpec::Abelian(self.nat_list()?)
                } else {
                    GroupSpec::Abelian(vec![self.nat()?])
                }
            }
            "product" => {
                let a = self.spec()?;
                self.expect(',')?;
                let b = self.spec()?;
                GroupSpec::product(a, b)
            }
            _ => {
                let normal = self.spec()?;
                self.expect(';')?;
                let acting = self.spec()?;
                self.expect(';')?;
                let mut action = vec![self.matrix()?];
                while self.eat(',') {
                    action.push(self.matrix()?);
                }
                GroupSpec::semidirect(normal, acting, action)
            }
        };
        self.expect(')')?;
        Ok(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use commhier::group::make_group;

    #[test]
    fn examples() {
        let d = parse_spec("dihedral(6)").unwrap();
        assert_eq!(d, GroupSpec::Dihedral(6));
        assert_eq!(make_group(&d).unwrap().order(), 12);

        let s = parse_spec("semidirect(abelian(7); cyclic(3); [[2]])").unwrap();
        assert_eq!(
            s,
            GroupSpec::semidirect(
                GroupSpec::Abelian(vec![7]),
                GroupSpec::Cyclic(3),
                vec![vec![vec![2]]]
            )
        );
        assert_eq!(make_group(&s).unwrap().order(), 21);

        let p = parse_spec("product(quaternion8, cyclic(3))").unwrap();
        assert_eq!(make_group(&p).unwrap().order(), 24);
    }

    #[test]
    fn whitespace_is_insignificant() {
        let a =
            parse_spec(" semidirect ( abelian ( [ 3 , 3 ] ) ;cyclic(2);[[2,0],[0,2]] ) ").unwrap();
        let b = parse_spec("semidirect(abelian([3,3]); cyclic(2); [[2,0],[0,2]])").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn several_action_matrices() {
        let s = parse_spec("semidirect(cyclic(3); abelian([2,2]); [[2]], [[1]])").unwrap();
        let GroupSpec::Semidirect { action, .. } = &s else {
            panic!()
        };
        assert_eq!(action.len(), 2);
        assert_eq!(make_group(&s).unwrap().order(), 12);
    }

    #[test]
    fn error_positions() {
        let e = parse_spec("dihedral(6").unwrap_err();
        assert_eq!(
            e,
            Error::Parse {
                position: 10,
                expected: "')'".into(),
                found: "end of input".into()
            }
        );
        let Error::Parse {
            position, found, ..
        } = parse_spec("product(cyclic(2), klein)").unwrap_err()
        else {
            panic!()
        };
        assert_eq!((position, found.as_str()), (19, "'klein'"));
        let Error::Parse {
            position, expected, ..
        } = parse_spec("cyclic(x)").unwrap_err()
        else {
            panic!()
        };
        assert_eq!((position, expected.as_str()), (7, "an integer"));
        assert!(matches!(
            parse_spec("cyclic(-3)"),
            Err(Error::Parse { position: 7, .. })
        ));
        assert!(matches!(
            parse_spec("cyclic(3) junk"),
            Err(Error::Parse { position: 10, .. })
        ));
        assert!(matches!(
            parse_spec(""),
            Err(Error::Parse { position: 0, .. })
        ));
    }

    #[test]
    fn canonical_round_trip_on_corpus() {
        for spec in commhier::corpus::corpus() {
            let text = spec.to_string();
            let back = parse_spec(&text).unwrap();
            assert_eq!(back, spec);
            assert_eq!(back.to_string(), text);
        }
    }
}
