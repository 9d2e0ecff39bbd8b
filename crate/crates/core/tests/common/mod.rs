//! Shared helpers for the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use partstat::exactnum::parse_rational;
use partstat::shifted_bell::{ShiftedBellPolynomial, UniPoly};
use partstat::Rational;

/// Reference coefficients of `M(d^k; n)`, `k = 3..=6`.
pub const DIMENSION_BLOCKS: &str = "\
P_{3,0}(n) =  0 +1n
P_{3,1}(n) =  -1/3 +6n +3n^2
P_{3,2}(n) =  +8/3 -45n -12n^2
P_{3,3}(n) =  +18 +51n +12n^2 +1n^3
P_{3,4}(n) =  -131/3 -45n -6n^2
P_{3,5}(n) =  +42 +12n
P_{3,6}(n) =  -8

P_{4,0}(n) =  0 +1n +3n^2
P_{4,1}(n) =  -21/2 -18n -20n^2
P_{4,2}(n) =  -36 +116/3n +72n^2 +6n^3
P_{4,3}(n) =  -5/6 -166/3n -162n^2 -24n^3
P_{4,4}(n) =  -103/3 +312n +150n^2 +16n^3 +1n^4
P_{4,5}(n) =  -81/2 -812/3n -90n^2 -8n^3
P_{4,6}(n) =  +409/3 +168n +24n^2
P_{4,7}(n) =  -104 -32n
P_{4,8}(n) =  +16

P_{5,0}(n) =  0 +1n +10n^2
P_{5,1}(n) =  +1036/15 +50/3n -35n^2 +15n^3
P_{5,2}(n) =  -1373/30 +95/2n -180n^2 -110n^3
P_{5,3}(n) =  +4415/3 -1370/3n +2030/3n^2 +300n^3 +10n^4
P_{5,4}(n) =  +47/2 -605/6n -2350/3n^2 -390n^3 -40n^4
P_{5,5}(n) =  +1049/3 +15n +1380n^2 +330n^3 +20n^4 +1n^5
P_{5,6}(n) =  +4673/30 -2485/2n -2750/3n^2 -150n^3 -10n^4
P_{5,7}(n) =  -95/3 +3005/3n +420n^2 +40n^3
P_{5,8}(n) =  -1010/3 -520n -80n^2
P_{5,9}(n) =  +240 +80n
P_{5,10}(n) =  -32

P_{6,0}(n) =  0 +1n +25n^2 +15n^3
P_{6,1}(n) =  +1655/6 +185/6n -309n^2 -120n^3
P_{6,2}(n) =  -661817/90 -17539/15n +1015n^2 +495n^3 +45n^4
P_{6,3}(n) =  +149203/45 +12779/10n +1935/2n^2 -1770n^3 -340n^4
P_{6,4}(n) =  -1118236/45 +36605/3n -3460n^2 +10420/3n^3 +840n^4 +15n^5
P_{6,5}(n) =  -121658/9 +3887/2n -8385/2n^2 -11450/3n^3 -765n^4 -60n^5
P_{6,6}(n) =  -1547/9 +1133n +3485n^2 +3960n^3 +615n^4 +24n^5 +1n^6
P_{6,7}(n) =  -38697/10 +7573/5n -13695/2n^2 -6940/3n^3 -225n^4 -12n^5
P_{6,8}(n) =  -12653/90 +3410n +3965n^2 +840n^3 +60n^4
P_{6,9}(n) =  +665 -2980n -1560n^2 -160n^3
P_{6,10}(n) =  +2060/3 +1440n +240n^2
P_{6,11}(n) =  -528 -192n
P_{6,12}(n) =  +64
";

/// Reference coefficients of `M(i^k; n)`, `k = 3..=5`.
pub const INTERTWINING_BLOCKS: &str = "\
Q_{3,0}(n) =  +19/192 -29/96n +1/16n^2 +1/8n^3
Q_{3,1}(n) =  +331/192 -193/96n -17/16n^2 +3/8n^3
Q_{3,2}(n) =  -25/6 -743/96n -1/4n^2 +3/8n^3
Q_{3,3}(n) =  +775/64 +449/96n -1/16n^2 +1/8n^3
Q_{3,4}(n) =  -451/32 -619/96n -15/16n^2
Q_{3,5}(n) =  +2045/192 +75/32n
Q_{3,6}(n) =  -125/64

Q_{4,0}(n) =  +4387/172800 +103/360n -11/32n^2 0n^3 +1/16n^4
Q_{4,1}(n) =  -3343/10800 +787/144n -7/16n^2 -7/4n^3 +1/4n^4
Q_{4,2}(n) =  -25453/3456 +7777/288n -335/48n^2 -23/8n^3 +3/8n^4
Q_{4,3}(n) =  -16681/8640 -4303/288n -49/8n^2 -9/8n^3 +1/4n^4
Q_{4,4}(n) =  +963509/34560 +23891/480n +6n^2 -5/8n^3 +1/16n^4
Q_{4,5}(n) =  -637751/14400 -8197/288n -53/12n^2 -5/8n^3
Q_{4,6}(n) =  +126773/3456 +1745/96n +75/32n^2
Q_{4,7}(n) =  -3425/192 -125/32n
Q_{4,8}(n) =  +625/256

Q_{5,0}(n) =  -107993/138240 -593/69120n +569/1152n^2 -175/576n^3 -5/192n^4 +1/32n^5
Q_{5,1}(n) =  -79109/27648 -67769/7680n +9859/1152n^2 +995/576n^3 -115/64n^4 +5/32n^5
Q_{5,2}(n) =  +5436923/138240 -1228273/11520n +5925/128n^2 +815/96n^3 -925/192n^4 +5/16n^5
Q_{5,3}(n) =  -29849/512 -92287/6912n +1375/16n^2 -65/32n^3 -415/96n^4 +5/16n^5
Q_{5,4}(n) =  +1825783/27648 -2270759/13824n -6497/576n^2 +865/288n^3 -105/64n^4 +5/32n^5
Q_{5,5}(n) =  -1092827/138240 +9971653/69120n +21119/288n^2 +725/96n^3 -145/192n^4 +1/32n^5
Q_{5,6}(n) =  -14859283/138240 -6747031/34560n -44905/1152n^2 -1145/576n^3 -25/64n^4
Q_{5,7}(n) =  +188749/1536 +656965/6912n +7225/384n^2 +125/64n^3
Q_{5,8}(n) =  -2168275/27648 -61625/1536n -625/128n^2
Q_{5,9}(n) =  +258125/9216 +3125/512n
Q_{5,10}(n) =  -3125/1024
";

/// Parses lines like `P_{3,1}(n) =  -1/3 +6n +3n^2` (also `0n^3`,
/// `+116/3n`) into `k -> shifted Bell polynomial`.
pub fn parse_blocks(text: &str) -> BTreeMap<usize, ShiftedBellPolynomial> {
    let mut by_k: BTreeMap<usize, Vec<(i64, UniPoly)>> = BTreeMap::new();
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
        let (head, body) = line.split_once('=').expect("`=` in coefficient line");
        let inner = &head[head.find('{').unwrap() + 1..head.find('}').unwrap()];
        let (k, shift) = inner.split_once(',').unwrap();
        let k: usize = k.trim().parse().unwrap();
        let shift: i64 = shift.trim().parse().unwrap();
        let mut coeffs: Vec<Rational> = Vec::new();
        for token in body.split_whitespace() {
            let (c, power) = match token.split_once('n') {
                None => (token, 0),
                Some((c, "")) => (c, 1),
                Some((c, p)) => (c, p.trim_start_matches('^').parse().unwrap()),
            };
            let c = parse_rational(c.trim_start_matches('+')).expect("rational coefficient");
            assert_eq!(
                coeffs.len(),
                power,
                "powers ascend without gaps in `{line}`"
            );
            coeffs.push(c);
        }
        by_k.entry(k)
            .or_default()
            .push((shift, UniPoly::new(coeffs)));
    }
    by_k.into_iter()
        .map(|(k, terms)| (k, ShiftedBellPolynomial::from_terms(terms)))
        .collect()
}
