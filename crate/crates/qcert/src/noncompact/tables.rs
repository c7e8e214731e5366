//! Transcribed closed forms used only as an optional cross-check of the
//! primary pipeline: a_0 = (A_1 + sqrt(A_2)) / A_3 and the two Hessian sums
//! as polynomials in n. Coefficients are listed from the highest degree.

use num_bigint::BigInt;

fn horner(coeffs: &[&str], n: i64) -> BigInt {
    let x = BigInt::from(n);
    coeffs.iter().fold(BigInt::from(0), |acc, c| acc * &x + c.parse::<BigInt>().expect("valid integer literal"))
}

fn product(n: i64, shifts: &[i64]) -> BigInt {
    shifts.iter().fold(BigInt::from(1), |acc, s| acc * BigInt::from(n + s))
}

const A1: [&str; 10] = [
    "11991",
    "-852294",
    "24029888",
    "-334408272",
    "2238186992",
    "-4359884256",
    "-20759728000",
    "78857215488",
    "8339503104",
    "-124262055936",
];

const A2: [&str; 24] = [
    "10989225",
    "-2987756460",
    "378031055952",
    "-29507030164560",
    "1587504902043088",
    "-62286471762681984",
    "1838499343113943552",
    "-41499228022465995264",
    "720749814386841727744",
    "-9608374930260373355520",
    "97259447027246828171264",
    "-732525312300365433016320",
    "3980505368562305038315520",
    "-15065834669595927057334272",
    "40459950924707392220168192",
    "-103397876171264024797249536",
    "339819087637723673505300480",
    "-740098364899745956009869312",
    "-394627146196739293779591168",
    "4735360453239104195348398080",
    "-3600382007256808416243351552",
    "-13598394732655532252847931392",
    "27513309069085642550126051328",
    "-15449764981452555902999592960",
];

const A3: [&str; 5] = [
    "3",
    "-24",
    "-4",
    "208",
    "384",
];

const TOTAL_BETA: [&str; 10] = [
    "16575",
    "-1195250",
    "34609680",
    "-498405392",
    "3446826416",
    "-6825460384",
    "-32854222976",
    "140880911360",
    "-106071106560",
    "18351046656",
];

const TOTAL_GAMMA: [&str; 15] = [
    "-62587200",
    "9336113958",
    "-606097935636",
    "22249394723672",
    "-498762775048144",
    "6750998185878816",
    "-47179375607237312",
    "11091250449666688",
    "2371218672260016384",
    "-14692080003168780288",
    "16691759536983257088",
    "91210104770428968960",
    "-251248956860387328000",
    "196206255022978105344",
    "-29818376183737221120",
];

const M2_BETA: [&str; 10] = [
    "3315",
    "-210762",
    "5346128",
    "-67844560",
    "431303152",
    "-1014186016",
    "-2114580096",
    "14491618304",
    "-18999469056",
    "4521295872",
];

const M2_GAMMA: [&str; 15] = [
    "-9586980",
    "1357155654",
    "-82964460564",
    "2837453335768",
    "-58221379164240",
    "692018215328032",
    "-3505745916586176",
    "-18173061039999360",
    "375084465957971200",
    "-1981203034836353024",
    "2356795745930203136",
    "11804945493335236608",
    "-35984415983967043584",
    "27690912838249611264",
    "-1017973919522488320",
];

/// (A_1, A_2, A_3) at n.
pub fn a0_tables(n: i64) -> (BigInt, BigInt, BigInt) {
    let pre = product(n, &[-26, -24, -22, -20, 4]);
    let a1 = &pre * horner(&A1, n);
    let a2 = &pre * horner(&A2, n);
    let a3 = product(n, &[-26, -24, -22, -20, -18, -16, -14, -12, -4, -2]) * horner(&A3, n);
    (a1, a2, a3)
}

/// (alpha, beta, gamma) of the total and m^2 Hessian sums as quadratics in
/// a_0, up to the common positive prefactor.
pub fn hessian_tables(n: i64) -> ([BigInt; 3], [BigInt; 3]) {
    let c = product(n, &[-24, -22, -20, -18]);
    let total_alpha = BigInt::from(96) * product(n, &[-24, -22, -20, -18, -16, -14, -12, -10, -3, -2, -2]);
    let total = [total_alpha, &c * BigInt::from(n - 2) * horner(&TOTAL_BETA, n), horner(&TOTAL_GAMMA, n)];
    let m2 = [BigInt::from(0), &c * BigInt::from(n - 2) * horner(&M2_BETA, n), horner(&M2_GAMMA, n)];
    (total, m2)
}
