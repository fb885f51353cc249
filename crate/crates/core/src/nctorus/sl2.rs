use std::fmt;

use super::TorusError;

/// Integer matrix [[a, b], [c, d]] with ad − bc = 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SL2Mat {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl SL2Mat {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self, TorusError> {
        let det = (a as i128) * (d as i128) - (b as i128) * (c as i128);
        if det != 1 {
            return Err(TorusError::Domain(format!(
                "[[{a},{b}],[{c},{d}]] has determinant {det}, not 1"
            )));
        }
        Ok(SL2Mat { a, b, c, d })
    }

    pub fn identity() -> Self {
        SL2Mat {
            a: 1,
            b: 0,
            c: 0,
            d: 1,
        }
    }

    /// deg(g) = c.
    pub fn degree(&self) -> i64 {
        self.c
    }

    pub fn trace(&self) -> i64 {
        self.a + self.d
    }

    pub fn mul(&self, o: &SL2Mat) -> SL2Mat {
        SL2Mat {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    pub fn inverse(&self) -> SL2Mat {
        SL2Mat {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    pub fn pow(&self, n: u32) -> SL2Mat {
        (0..n).fold(SL2Mat::identity(), |acc, _| acc.mul(self))
    }

    pub fn neg(&self) -> SL2Mat {
        SL2Mat {
            a: -self.a,
            b: -self.b,
            c: -self.c,
            d: -self.d,
        }
    }
}

impl fmt::Display for SL2Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

impl std::str::FromStr for SL2Mat {
    type Err = TorusError;

    /// Four comma-separated integers a,b,c,d (brackets and spaces ignored).
    fn from_str(s: &str) -> Result<Self, TorusError> {
        let cleaned: String = s.chars().filter(|c| !"[] ".contains(*c)).collect();
        let v: Vec<i64> = cleaned
            .split(',')
            .map(|t| t.parse::<i64>())
            .collect::<Result<_, _>>()
            .map_err(|_| TorusError::Parse(format!("g must be four integers a,b,c,d, got {s:?}")))?;
        if v.len() != 4 {
            return Err(TorusError::Parse(format!(
                "g must be four integers a,b,c,d, got {s:?}"
            )));
        }
        SL2Mat::new(v[0], v[1], v[2], v[3])
    }
}

/// Degrees of g₁, g₂ and g₁g₂, with the expectation flag deg g₁, deg g₂ > 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DegreeReport {
    pub deg1: i64,
    pub deg2: i64,
    pub deg12: i64,
    pub positive: bool,
    pub violation: bool,
}

pub fn tensor_degree_check(g1: &SL2Mat, g2: &SL2Mat) -> DegreeReport {
    let deg12 = g1.mul(g2).degree();
    let positive = g1.degree() > 0 && g2.degree() > 0;
    DegreeReport {
        deg1: g1.degree(),
        deg2: g2.degree(),
        deg12,
        positive,
        violation: positive && deg12 <= 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_examples() {
        let g = SL2Mat::new(1, 0, 1, 1).unwrap();
        let r = tensor_degree_check(&g, &g);
        assert_eq!((r.deg1, r.deg2, r.deg12), (1, 1, 2));
        assert!(r.positive && !r.violation);

        let h = SL2Mat::new(4, -1, 5, -1).unwrap();
        let r = tensor_degree_check(&h, &h);
        assert_eq!((r.deg1, r.deg2, r.deg12), (5, 5, 15));
        assert_eq!(h.pow(2), SL2Mat::new(11, -3, 15, -4).unwrap());

        let r = tensor_degree_check(&SL2Mat::identity(), &g);
        assert_eq!(r.deg1, 0);
        assert!(!r.positive);
    }

    #[test]
    fn parsing_and_determinant() {
        assert_eq!("4,-1,5,-1".parse::<SL2Mat>().unwrap(), SL2Mat::new(4, -1, 5, -1).unwrap());
        assert!("1,1,1,1".parse::<SL2Mat>().is_err());
        assert!("1,2,3".parse::<SL2Mat>().is_err());
    }
}
