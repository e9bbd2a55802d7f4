use num_bigint::BigInt;
use num_traits::One;

use super::{Catalog, Character, CongruenceClaim, Formula, RhsConstant, Status};
use crate::exactmath::{parse_rational, rat};
use crate::sequences::SequenceSpec;
use crate::{Polynomial, Rational};

/// Product of prime powers.
fn pw(factors: &[(u64, u32)]) -> BigInt {
    factors
        .iter()
        .map(|&(p, e)| BigInt::from(p).pow(e))
        .product()
}

fn frac(num: &[(u64, u32)], den: &[(u64, u32)]) -> Rational {
    Rational::new(pw(num), pw(den))
}

fn poly(coeffs: &[&str]) -> Polynomial {
    Polynomial::new(coeffs.iter().map(|c| parse_rational(c).unwrap()).collect())
}

fn half_params(k: usize) -> Vec<Rational> {
    vec![rat(1, 2); k]
}

fn pochhammer5(rest: [(i64, i64); 4]) -> SequenceSpec {
    let mut params = vec![rat(1, 2)];
    params.extend(rest.iter().map(|&(n, d)| rat(n, d)));
    SequenceSpec::pochhammer(params, 5, Rational::one())
}

struct Entry<'a> {
    name: &'a str,
    sequence: SequenceSpec,
    poly: &'a [&'a str],
    argument: Rational,
    q: Rational,
    radicand: BigInt,
    pi_power: u32,
    provenance: &'a str,
}

impl Entry<'_> {
    fn build(self, status: Status) -> Formula {
        Formula {
            name: self.name.to_string(),
            sequence: self.sequence,
            poly: poly(self.poly),
            argument: self.argument,
            rhs: RhsConstant::new(self.q, self.radicand.magnitude().clone(), self.pi_power)
                .unwrap(),
            provenance: self.provenance.to_string(),
            status,
        }
    }
}

fn one() -> BigInt {
    BigInt::one()
}

fn int(v: u64) -> Rational {
    Rational::from_integer(v.into())
}

fn bt(s: SequenceSpec) -> SequenceSpec {
    SequenceSpec::binomial_transform(s)
}

/// Every identity and congruence claim, in a fixed order.
pub fn builtin_catalog() -> Catalog {
    let s1 = SequenceSpec::half_fifth();
    let s3 = pochhammer5([(1, 2), (1, 2), (1, 4), (3, 4)]);
    let s4 = pochhammer5([(1, 3), (2, 3), (1, 4), (3, 4)]);
    let s5 = pochhammer5([(1, 4), (3, 4), (1, 6), (5, 6)]);
    let s6 = pochhammer5([(1, 8), (3, 8), (5, 8), (7, 8)]);
    let s7 = pochhammer5([(1, 3), (2, 3), (1, 6), (5, 6)]);
    let s8 = SequenceSpec::BinomialSelfConvolution {
        outer_power: 2,
        inner_power: 2,
        scale: Rational::one(),
    };
    let s9 = SequenceSpec::half_weight_quartic();
    let sg = SequenceSpec::pochhammer(half_params(7), 7, Rational::one());
    let sz = SequenceSpec::ZudilinDomb;
    let s1c = SequenceSpec::pochhammer(half_params(5), 5, int(1024));

    let mut entries = vec![
        Entry {
            name: "id1",
            sequence: s1.clone(),
            poly: &["1", "8", "20"],
            argument: rat(-1, 4),
            q: int(8),
            radicand: one(),
            pi_power: 2,
            provenance: "Identity 1 (Guillera)",
        },
        Entry {
            name: "id1-binomial",
            sequence: bt(s1.clone()),
            poly: &["-15", "-16", "64"],
            argument: rat(1, 5),
            q: int(50),
            radicand: one(),
            pi_power: 2,
            provenance: "Identity 1, binomial transform",
        },
        Entry {
            name: "id2",
            sequence: s1.clone(),
            poly: &["13", "180", "820"],
            argument: rat(-1, 1024),
            q: int(128),
            radicand: one(),
            pi_power: 2,
            provenance: "Identity 2 (Guillera)",
        },
        Entry {
            name: "id2-binomial",
            sequence: bt(s1.clone()),
            poly: &["61633", "909312", "4194304"],
            argument: rat(1, 1025),
            q: frac(&[(5, 5), (41, 2)], &[(2, 3)]),
            radicand: one(),
            pi_power: 2,
            provenance: "Identity 2, binomial transform",
        },
        Entry {
            name: "id3-original",
            sequence: s3.clone(),
            poly: &["3", "34", "120"],
            argument: rat(1, 16),
            q: int(32),
            radicand: one(),
            pi_power: 2,
            provenance: "derived by inverse transform",
        },
        Entry {
            name: "id3-binomial",
            sequence: bt(s3.clone()),
            poly: &["215", "928", "2048"],
            argument: rat(-1, 15),
            q: int(450),
            radicand: one(),
            pi_power: 2,
            provenance: "Identity 3, binomial transform",
        },
        Entry {
            name: "id4",
            sequence: s4.clone(),
            poly: &["5", "63", "252"],
            argument: rat(-1, 48),
            q: int(48),
            radicand: one(),
            pi_power: 2,
            provenance: "Identity 4 (Guillera)",
        },
        Entry {
            name: "id4-binomial",
            sequence: bt(s4),
            poly: &["-209", "7992", "41472"],
            argument: rat(1, 49),
            q: frac(&[(7, 5)], &[(2, 1)]),
            radicand: one(),
            pi_power: 2,
            provenance: "Identity 4, binomial transform",
        },
        Entry {
            name: "id5",
            sequence: s5.clone(),
            poly: &["15", "278", "1640"],
            argument: rat(-1, 1024),
            q: rat(256, 3),
            radicand: 3.into(),
            pi_power: 2,
            provenance: "Identity 5 (Guillera)",
        },
        Entry {
            name: "id5-binomial",
            sequence: bt(s5),
            poly: &["201903", "4196352", "25165824"],
            argument: rat(1, 1025),
            q: frac(&[(5, 5), (41, 2)], &[(2, 2)]),
            radicand: 3.into(),
            pi_power: 2,
            provenance: "Identity 5, binomial transform",
        },
        Entry {
            name: "id6",
            sequence: s6.clone(),
            poly: &["15", "304", "1920"],
            argument: rat(1, 2401),
            q: int(56),
            radicand: 7.into(),
            pi_power: 2,
            provenance: "Identity 6 (Guillera)",
        },
        Entry {
            name: "id6-binomial",
            sequence: bt(s6),
            poly: &["16389226", "315416969", "1977326743"],
            argument: rat(-1, 2400),
            q: frac(&[(2, 11), (3, 2), (5, 5)], &[]),
            radicand: 7.into(),
            pi_power: 2,
            provenance: "Identity 6, binomial transform",
        },
        Entry {
            name: "id7",
            sequence: s7.clone(),
            poly: &["29", "693", "5418"],
            argument: rat(-1, 512000),
            q: int(128),
            radicand: 5.into(),
            pi_power: 2,
            provenance: "Identity 7 (Guillera)",
        },
        Entry {
            name: "id7-binomial",
            sequence: bt(s7),
            poly: &["1402561253", "33528576000", "262144000000"],
            argument: rat(1, 512001),
            q: frac(&[(3, 13), (7, 5), (43, 2)], &[(2, 6), (5, 3)]),
            radicand: 5.into(),
            pi_power: 2,
            provenance: "Identity 7, binomial transform",
        },
        Entry {
            name: "id8",
            sequence: s8.clone(),
            poly: &["1", "12", "36"],
            argument: rat(1, 1024),
            q: int(32),
            radicand: one(),
            pi_power: 2,
            provenance: "Identity 8",
        },
        Entry {
            name: "id8-binomial",
            sequence: bt(s8),
            poly: &["121745", "1409024", "4194304"],
            argument: rat(-1, 1023),
            q: frac(&[(3, 1), (11, 3), (31, 3)], &[(2, 5)]),
            radicand: one(),
            pi_power: 2,
            provenance: "Identity 8, binomial transform",
        },
        Entry {
            name: "id9",
            sequence: s9.clone(),
            poly: &["9/2", "78", "472", "672"],
            argument: frac(&[], &[(2, 22)]),
            q: int(64),
            radicand: 2.into(),
            pi_power: 2,
            provenance: "Identity 9 (Guillera)",
        },
        Entry {
            name: "id9-monster",
            sequence: bt(s9),
            poly: &[
                "221375102329522137953",
                "3836969069974667657216",
                "23218343626230634381312",
                "33056565380087516495872",
            ],
            argument: rat(-1, 4194303),
            q: frac(&[(3, 3), (23, 4), (89, 4), (683, 4)], &[(2, 15)]),
            radicand: 2.into(),
            pi_power: 2,
            provenance: "Identity 9, binomial transform (the monster formula)",
        },
        Entry {
            name: "gourevich",
            sequence: sg.clone(),
            poly: &["1", "14", "76", "168"],
            argument: rat(1, 64),
            q: int(32),
            radicand: one(),
            pi_power: 3,
            provenance: "Gourevich's formula for 1/π³",
        },
        Entry {
            name: "gourevich-binomial",
            sequence: bt(sg),
            poly: &["64197", "347776", "1130496", "2097152"],
            argument: rat(-1, 63),
            q: frac(&[(3, 7), (7, 3)], &[(2, 1)]),
            radicand: one(),
            pi_power: 3,
            provenance: "Gourevich's formula, binomial transform",
        },
        Entry {
            name: "z1",
            sequence: sz.clone(),
            poly: &["-3", "-10", "18"],
            argument: rat(1, 6400),
            q: int(10),
            radicand: 5.into(),
            pi_power: 2,
            provenance: "Zudilin, quadratic transformation of Identity 1",
        },
        Entry {
            name: "z1-binomial",
            sequence: bt(sz.clone()),
            poly: &["-545735", "-1818624", "3276800"],
            argument: rat(-1, 6399),
            q: frac(&[(3, 10), (79, 3)], &[(2, 7), (5, 3)]),
            radicand: 5.into(),
            pi_power: 2,
            provenance: "Zudilin Z1, binomial transform",
        },
        Entry {
            name: "z2",
            sequence: sz.clone(),
            poly: &["16032", "227104", "1046529"],
            argument: rat(1, 1050625),
            q: frac(&[(5, 4), (41, 1)], &[]),
            radicand: 41.into(),
            pi_power: 2,
            provenance: "Zudilin, quadratic transformation of Identity 2",
        },
        Entry {
            name: "z2-binomial",
            sequence: bt(sz),
            poly: &["1169782053458", "16569725866875", "76354828515625"],
            argument: rat(-1, 1050624),
            q: frac(&[(2, 33), (3, 7), (19, 3)], &[(41, 3)]),
            radicand: 41.into(),
            pi_power: 2,
            provenance: "Zudilin Z2, binomial transform",
        },
        Entry {
            name: "id1-riordan-half",
            sequence: SequenceSpec::riordan(s1.clone(), rat(1, 2)),
            poly: &["-22", "-32", "64"],
            argument: rat(1, 5),
            q: int(25),
            radicand: 5.into(),
            pi_power: 2,
            provenance: "Identity 1, Riordan transform with p = 1/2",
        },
        Entry {
            name: "id2-riordan-half",
            sequence: SequenceSpec::riordan(s1.clone(), rat(1, 2)),
            poly: &["14785", "226304", "1048576"],
            argument: rat(1, 1025),
            q: frac(&[(5, 6), (41, 2)], &[(2, 10)]),
            radicand: 41.into(),
            pi_power: 2,
            provenance: "Identity 2, Riordan transform with p = 1/2",
        },
        Entry {
            name: "id1-riordan-neghalf",
            sequence: SequenceSpec::ClosedFormNegHalfShift,
            poly: &["-3", "0", "32"],
            argument: rat(1, 20),
            q: int(10),
            radicand: 5.into(),
            pi_power: 2,
            provenance: "Identity 1, Riordan transform with p = −1/2 (closed form)",
        },
        Entry {
            name: "id2-riordan-neghalf",
            sequence: SequenceSpec::ClosedFormNegHalfShift,
            poly: &["16032", "228352", "1048576"],
            argument: rat(1, 4100),
            q: frac(&[(5, 4), (41, 1)], &[]),
            radicand: 41.into(),
            pi_power: 2,
            provenance: "Identity 2, Riordan transform with p = −1/2 (closed form)",
        },
        Entry {
            name: "id1-central",
            sequence: s1c.clone(),
            poly: &["1", "8", "20"],
            argument: rat(-1, 4096),
            q: int(8),
            radicand: one(),
            pi_power: 2,
            provenance: "Identity 1 in central-binomial form",
        },
        Entry {
            name: "id2-central",
            sequence: s1c.clone(),
            poly: &["13", "180", "820"],
            argument: frac(&[], &[(2, 20)]) * rat(-1, 1),
            q: int(128),
            radicand: one(),
            pi_power: 2,
            provenance: "Identity 2 in central-binomial form",
        },
        Entry {
            name: "id1-sqrt",
            sequence: SequenceSpec::central_binomial_conv(s1c.clone()),
            poly: &["106497", "842550", "2101250"],
            argument: rat(-1, 4096),
            q: frac(&[(2, 7), (5, 2), (41, 1)], &[]),
            radicand: 41.into(),
            pi_power: 2,
            provenance: "Identity 1, √(1−4x) transformation",
        },
        Entry {
            name: "id2-sqrt",
            sequence: SequenceSpec::central_binomial_conv(s1c.clone()),
            poly: &["44674554281", "618490757170", "2817520042025"],
            argument: frac(&[], &[(2, 20)]) * rat(-1, 1),
            q: frac(&[(2, 14)], &[]),
            radicand: pw(&[(5, 1), (13, 3), (37, 3), (109, 3)]),
            pi_power: 2,
            provenance: "Identity 2, √(1−4x) transformation",
        },
        Entry {
            name: "id1-ballot",
            sequence: SequenceSpec::ballot(s1c.clone()),
            poly: &["281473399652417", "2251797129330760", "5629498863124500"],
            argument: rat(-4096, 16777217),
            q: frac(&[(97, 3), (257, 3), (673, 3)], &[(2, 21)]),
            radicand: one(),
            pi_power: 2,
            provenance: "Identity 1, quadratic substitution x/(1+x²)",
        },
        Entry {
            name: "id2-ballot",
            sequence: SequenceSpec::ballot(s1c),
            poly: &[
                "15716035651016544248400757",
                "217606647523420455168904220",
                "991319172082192724189512500",
            ],
            argument: frac(&[(2, 20)], &[(257, 1), (4278255361, 1)]) * rat(-1, 1),
            q: frac(&[(257, 3), (4278255361, 3)], &[(2, 33)]),
            radicand: one(),
            pi_power: 2,
            provenance: "Identity 2, quadratic substitution x/(1+x²)",
        },
    ]
    .into_iter()
    .map(|e| e.build(Status::VerifiedExpected))
    .collect::<Vec<_>>();

    let suspect = Entry {
        name: "id3-suspect",
        sequence: bt(s3),
        poly: &["16389226", "315416969", "1977326743"],
        argument: rat(-1, 2400),
        q: frac(&[(2, 11), (3, 2), (5, 5)], &[]),
        radicand: 7.into(),
        pi_power: 2,
        provenance:
            "Identity 3, first display as printed (repeats the Identity 6 transform constants)",
    };
    let at = entries
        .iter()
        .position(|f| f.name == "id3-original")
        .unwrap();
    entries.insert(at, suspect.build(Status::Suspect));

    let squared = SequenceSpec::BinomialSelfConvolution {
        outer_power: 0,
        inner_power: 3,
        scale: rat(1, 64),
    };
    let claim = |name: &str, seq: &SequenceSpec, p: &[&str], x0: Rational, m: u32, c: i64, ch| {
        CongruenceClaim {
            name: name.to_string(),
            sequence: seq.clone(),
            poly: poly(p),
            argument: x0,
            modulus_power: m,
            residue_coefficient: rat(c, 1),
            character: ch,
        }
    };
    let claims = vec![
        claim(
            "id9",
            &SequenceSpec::half_weight_quartic(),
            &["9/2", "78", "472", "672"],
            frac(&[], &[(2, 22)]),
            5,
            9,
            Character::Kronecker2,
        ),
        claim(
            "sq-441",
            &squared,
            &["17", "154", "441"],
            rat(1, 64),
            5,
            17,
            Character::None,
        ),
        claim(
            "sq-3",
            &squared,
            &["0", "1", "3"],
            rat(1, 4),
            6,
            0,
            Character::None,
        ),
        claim(
            "sq-16",
            &squared,
            &["5", "16", "16"],
            rat(-1, 1),
            5,
            5,
            Character::None,
        ),
        claim(
            "sq-9",
            &squared,
            &["1", "5", "9"],
            rat(-1, 8),
            5,
            1,
            Character::None,
        ),
    ];

    Catalog {
        formulas: entries,
        claims,
    }
}
