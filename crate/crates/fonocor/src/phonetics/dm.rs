//! Double Metaphone primary code, instrumented for vowel re-insertion.
//!
//! This is a port of the classic Double Metaphone algorithm (Philips), primary
//! code only, restricted to ASCII input — callers fold accents first. Besides
//! the standard primary code it simultaneously builds a second stream in which
//! every source vowel the algorithm skips is re-inserted as a lowercase
//! character at the point where it was skipped; deleting the lowercase vowels
//! from that stream always recovers the plain primary code.

// Several branches emit the same code on purpose: the branch layout tracks
// the reference algorithm case by case, which keeps the port auditable.
#![allow(clippy::if_same_then_else)]

const SILENT_START: &[&[u8]] = &[b"GN", b"KN", b"PN", b"WR", b"PS"];
const L_R_N_M_B_H_F_V_W_SPACE: &[&str] =
    &["L", "R", "N", "M", "B", "H", "F", "V", "W", " "];
const ES_EP_EB_EL_EY_IB_IL_IN_IE_EI_ER: &[&str] = &[
    "ES", "EP", "EB", "EL", "EY", "IB", "IL", "IN", "IE", "EI", "ER",
];
const L_T_K_S_N_M_B_Z: &[&str] = &["L", "T", "K", "S", "N", "M", "B", "Z"];

/// Byte at `index`, or NUL when out of range (never matches a letter test).
fn at(v: &[u8], index: isize) -> u8 {
    if index >= 0 && (index as usize) < v.len() {
        v[index as usize]
    } else {
        0
    }
}

/// Does the slice at [start, start+len) equal one of the patterns?
fn matches_at(v: &[u8], start: isize, len: usize, patterns: &[&str]) -> bool {
    if start < 0 {
        return false;
    }
    let start = start as usize;
    if start + len > v.len() {
        return false;
    }
    let target = &v[start..start + len];
    patterns.iter().any(|p| p.as_bytes() == target)
}

/// Vowel test in the Double Metaphone sense (y included).
fn vowel_y(c: u8) -> bool {
    matches!(c, b'A' | b'E' | b'I' | b'O' | b'U' | b'Y')
}

fn is_slavo_germanic(v: &[u8]) -> bool {
    v.contains(&b'W')
        || v.contains(&b'K')
        || v.windows(2).any(|w| w == b"CZ")
        || v.windows(4).any(|w| w == b"WITZ")
}

/// Encode an ASCII word; returns `(primary, primary_with_vowels)`.
pub(crate) fn encode(word: &str) -> (String, String) {
    let v: Vec<u8> = word.trim().bytes().map(|b| b.to_ascii_uppercase()).collect();
    if v.is_empty() {
        return (String::new(), String::new());
    }

    let slavo = is_slavo_germanic(&v);
    let mut primary = String::new();
    let mut with_vowels = String::new();
    let mut i: usize = if SILENT_START.iter().any(|s| v.starts_with(s)) {
        1
    } else {
        0
    };

    while i < v.len() {
        let start = i as isize;
        let before = primary.len();
        let skip = step(&v, start, slavo, &mut primary);

        // Mirror whatever the standard algorithm produced, then re-insert
        // the source vowels it passed over. An initial vowel is not
        // re-inserted: the standard code already spends its 'A' on it.
        with_vowels.push_str(&primary[before..]);
        let end = (i + 1 + skip).min(v.len());
        for (p, &byte) in v.iter().enumerate().take(end).skip(i) {
            if p != 0 && matches!(byte, b'A' | b'E' | b'I' | b'O' | b'U') {
                with_vowels.push(byte.to_ascii_lowercase() as char);
            }
        }

        i += 1 + skip;
    }

    (primary, with_vowels)
}

/// Process the character at `index`; append code text and return how many
/// further source characters the step consumed.
fn step(v: &[u8], index: isize, slavo: bool, out: &mut String) -> usize {
    match at(v, index) {
        b'A' | b'E' | b'I' | b'O' | b'U' | b'Y' => {
            if index == 0 {
                out.push('A');
            }
            0
        }
        b'B' => {
            out.push('P');
            usize::from(at(v, index + 1) == b'B')
        }
        b'C' => handle_c(v, index, out),
        b'D' => handle_d(v, index, out),
        b'F' => {
            out.push('F');
            usize::from(at(v, index + 1) == b'F')
        }
        b'G' => handle_g(v, index, slavo, out),
        b'H' => handle_h(v, index, out),
        b'J' => handle_j(v, index, slavo, out),
        b'K' => {
            out.push('K');
            usize::from(at(v, index + 1) == b'K')
        }
        b'L' => handle_l(v, index, out),
        b'M' => {
            out.push('M');
            usize::from(condition_m0(v, index))
        }
        b'N' => {
            out.push('N');
            usize::from(at(v, index + 1) == b'N')
        }
        b'P' => handle_p(v, index, out),
        b'Q' => {
            out.push('K');
            usize::from(at(v, index + 1) == b'Q')
        }
        b'R' => handle_r(v, index, slavo, out),
        b'S' => handle_s(v, index, out),
        b'T' => handle_t(v, index, out),
        b'V' => {
            out.push('F');
            usize::from(at(v, index + 1) == b'V')
        }
        b'W' => handle_w(v, index, out),
        b'X' => handle_x(v, index, out),
        b'Z' => handle_z(v, index, out),
        _ => 0,
    }
}

fn handle_c(v: &[u8], index: isize, out: &mut String) -> usize {
    if condition_c0(v, index) {
        out.push('K');
        1
    } else if index == 0 && matches_at(v, index, 6, &["CAESAR"]) {
        out.push('S');
        1
    } else if matches_at(v, index, 2, &["CH"]) {
        handle_ch(v, index, out)
    } else if matches_at(v, index, 2, &["CZ"]) && !matches_at(v, index - 2, 4, &["WICZ"]) {
        out.push('S');
        1
    } else if matches_at(v, index + 1, 3, &["CIA"]) {
        out.push('X');
        2
    } else if matches_at(v, index, 2, &["CC"]) && !(index == 1 && at(v, 0) == b'M') {
        handle_cc(v, index, out)
    } else if matches_at(v, index, 2, &["CK", "CG", "CQ"]) {
        out.push('K');
        1
    } else if matches_at(v, index, 2, &["CI", "CE", "CY"]) {
        out.push('S');
        1
    } else {
        out.push('K');
        if matches_at(v, index + 1, 2, &[" C", " Q", " G"]) {
            2
        } else if matches_at(v, index + 1, 1, &["C", "K", "Q"])
            && !matches_at(v, index + 1, 2, &["CE", "CI"])
        {
            1
        } else {
            0
        }
    }
}

fn condition_c0(v: &[u8], index: isize) -> bool {
    if matches_at(v, index, 4, &["CHIA"]) {
        return true;
    }
    if index < 1 {
        return false;
    }
    if index < 2 || vowel_y(at(v, index - 2)) {
        return false;
    }
    if !matches_at(v, index - 1, 3, &["ACH"]) {
        return false;
    }
    let ch = at(v, index + 2);
    (ch == 0 || (ch != b'I' && ch != b'E')) || matches_at(v, index - 2, 6, &["BACHER", "MACHER"])
}

fn handle_ch(v: &[u8], index: isize, out: &mut String) -> usize {
    if index > 0 && matches_at(v, index, 4, &["CHAE"]) {
        out.push('K');
    } else if condition_ch0(v, index) || condition_ch1(v, index) {
        out.push('K');
    } else if index > 0 {
        if matches_at(v, 0, 2, &["MC"]) {
            out.push('K');
        } else {
            out.push('X');
        }
    } else {
        out.push('X');
    }
    1
}

fn condition_ch0(v: &[u8], index: isize) -> bool {
    if index != 0 {
        return false;
    }
    if !matches_at(v, index + 1, 5, &["HARAC", "HARIS"])
        && !matches_at(v, index + 1, 3, &["HOR", "HYM", "HIA", "HEM"])
    {
        return false;
    }
    !matches_at(v, 0, 5, &["CHORE"])
}

fn condition_ch1(v: &[u8], index: isize) -> bool {
    matches_at(v, 0, 4, &["VAN ", "VON "])
        || matches_at(v, 0, 3, &["SCH"])
        || (index > 1 && matches_at(v, index - 2, 6, &["ORCHES", "ARCHIT", "ORCHID"]))
        || (index > 1 && matches_at(v, index + 2, 1, &["T", "S"]))
        || ((index == 0 || matches_at(v, index - 1, 1, &["A", "O", "U", "E"]))
            && (matches_at(v, index + 2, 1, L_R_N_M_B_H_F_V_W_SPACE)
                || (index + 1) as usize == v.len() - 1))
}

fn handle_cc(v: &[u8], index: isize, out: &mut String) -> usize {
    if matches_at(v, index + 2, 1, &["I", "E", "H"]) && !matches_at(v, index + 2, 2, &["HU"]) {
        if (index == 1 && at(v, index - 1) == b'A')
            || matches_at(v, index - 1, 5, &["UCCEE", "UCCES"])
        {
            out.push_str("KS");
        } else {
            out.push('X');
        }
        2
    } else {
        out.push('K');
        1
    }
}

fn handle_d(v: &[u8], index: isize, out: &mut String) -> usize {
    if matches_at(v, index, 2, &["DG"]) {
        if matches_at(v, index + 2, 1, &["I", "E", "Y"]) {
            out.push('J');
            2
        } else {
            out.push_str("TK");
            1
        }
    } else if matches_at(v, index, 2, &["DT", "DD"]) {
        out.push('T');
        1
    } else {
        out.push('T');
        0
    }
}

fn handle_g(v: &[u8], index: isize, slavo: bool, out: &mut String) -> usize {
    if at(v, index + 1) == b'H' {
        handle_gh(v, index, out)
    } else if at(v, index + 1) == b'N' {
        if index == 1 && vowel_y(at(v, 0)) && !slavo {
            out.push_str("KN");
        } else if !matches_at(v, index + 2, 2, &["EY"]) && at(v, index + 1) != b'Y' && !slavo {
            out.push('N');
        } else {
            out.push_str("KN");
        }
        1
    } else if matches_at(v, index + 1, 2, &["LI"]) && !slavo {
        out.push_str("KL");
        1
    } else if (index == 0
        && (at(v, index + 1) == b'Y'
            || matches_at(v, index + 1, 2, ES_EP_EB_EL_EY_IB_IL_IN_IE_EI_ER)))
        || ((matches_at(v, index + 1, 2, &["ER"]) || at(v, index + 1) == b'Y')
            && !matches_at(v, 0, 6, &["DANGER", "RANGER", "MANGER"])
            && !matches_at(v, index - 1, 1, &["E", "I"])
            && !matches_at(v, index - 1, 3, &["RGY", "OGY"]))
    {
        out.push('K');
        1
    } else if matches_at(v, index + 1, 1, &["E", "I", "Y"])
        || matches_at(v, index - 1, 4, &["AGGI", "OGGI"])
    {
        if matches_at(v, 0, 4, &["VAN ", "VON "])
            || matches_at(v, 0, 3, &["SCH"])
            || matches_at(v, index + 1, 2, &["ET"])
        {
            out.push('K');
        } else {
            out.push('J');
        }
        1
    } else if at(v, index + 1) == b'G' {
        out.push('K');
        1
    } else {
        out.push('K');
        0
    }
}

fn handle_gh(v: &[u8], index: isize, out: &mut String) -> usize {
    if index > 0 && !vowel_y(at(v, index - 1)) {
        out.push('K');
        1
    } else if index == 0 {
        if at(v, index + 2) == b'I' {
            out.push('J');
        } else {
            out.push('K');
        }
        1
    } else if (index > 1 && matches_at(v, index - 2, 1, &["B", "H", "D"]))
        || (index > 2 && matches_at(v, index - 3, 1, &["B", "H", "D"]))
        || (index > 3 && matches_at(v, index - 4, 1, &["B", "H"]))
    {
        1
    } else {
        if index > 2
            && at(v, index - 1) == b'U'
            && matches_at(v, index - 3, 1, &["C", "G", "L", "R", "T"])
        {
            out.push('F');
        } else if index > 0 && at(v, index - 1) != b'I' {
            out.push('K');
        }
        1
    }
}

fn handle_h(v: &[u8], index: isize, out: &mut String) -> usize {
    // Keep H only word-initially before a vowel or between two vowels.
    if (index == 0 || vowel_y(at(v, index - 1))) && vowel_y(at(v, index + 1)) {
        out.push('H');
        1
    } else {
        0
    }
}

fn handle_j(v: &[u8], index: isize, slavo: bool, out: &mut String) -> usize {
    if matches_at(v, index, 4, &["JOSE"]) || matches_at(v, 0, 4, &["SAN "]) {
        if (index == 0 && at(v, index + 4) == b' ')
            || v.len() == 4
            || matches_at(v, 0, 4, &["SAN "])
        {
            out.push('H');
        } else {
            out.push('J');
        }
        0
    } else {
        if index == 0 && !matches_at(v, index, 4, &["JOSE"]) {
            out.push('J');
        } else if index > 0
            && vowel_y(at(v, index - 1))
            && !slavo
            && matches!(at(v, index + 1), b'A' | b'O')
        {
            out.push('J');
        } else if index as usize == v.len() - 1 {
            out.push('J');
        } else if !matches_at(v, index + 1, 1, L_T_K_S_N_M_B_Z)
            && !matches_at(v, index - 1, 1, &["S", "K", "L"])
        {
            out.push('J');
        }
        usize::from(at(v, index + 1) == b'J')
    }
}

fn handle_l(v: &[u8], index: isize, out: &mut String) -> usize {
    if at(v, index + 1) == b'L' {
        // condition_l0 suppresses the alternate code only; the primary keeps L.
        out.push('L');
        1
    } else {
        out.push('L');
        0
    }
}

fn condition_m0(v: &[u8], index: isize) -> bool {
    if at(v, index + 1) == b'M' {
        return true;
    }
    matches_at(v, index - 1, 3, &["UMB"])
        && ((index + 1) == v.len() as isize - 1 || matches_at(v, index + 2, 2, &["ER"]))
}

fn handle_p(v: &[u8], index: isize, out: &mut String) -> usize {
    if at(v, index + 1) == b'H' {
        out.push('F');
        1
    } else {
        out.push('P');
        usize::from(matches_at(v, index + 1, 1, &["P", "B"]))
    }
}

fn handle_r(v: &[u8], index: isize, slavo: bool, out: &mut String) -> usize {
    let french_final = index > 3
        && index == v.len() as isize - 1
        && !slavo
        && matches_at(v, index - 2, 2, &["IE"])
        && !matches_at(v, index - 4, 2, &["ME", "MA"]);
    if !french_final {
        out.push('R');
    }
    usize::from(at(v, index + 1) == b'R')
}

fn handle_s(v: &[u8], index: isize, out: &mut String) -> usize {
    if matches_at(v, index - 1, 3, &["ISL", "YSL"]) {
        0
    } else if index == 0 && matches_at(v, index, 5, &["SUGAR"]) {
        out.push('X');
        0
    } else if matches_at(v, index, 2, &["SH"]) {
        if matches_at(v, index + 1, 4, &["HEIM", "HOEK", "HOLM", "HOLZ"]) {
            out.push('S');
        } else {
            out.push('X');
        }
        1
    } else if matches_at(v, index, 3, &["SIO", "SIA"]) || matches_at(v, index, 4, &["SIAN"]) {
        out.push('S');
        2
    } else if (index == 0 && matches_at(v, index + 1, 1, &["M", "N", "L", "W"]))
        || matches_at(v, index + 1, 1, &["Z"])
    {
        out.push('S');
        usize::from(matches_at(v, index + 1, 1, &["Z"]))
    } else if matches_at(v, index, 2, &["SC"]) {
        handle_sc(v, index, out)
    } else {
        let french_final = index > 1
            && index == v.len() as isize - 1
            && matches_at(v, index - 2, 2, &["AI", "OI"]);
        if !french_final {
            out.push('S');
        }
        usize::from(matches_at(v, index + 1, 1, &["S", "Z"]))
    }
}

fn handle_sc(v: &[u8], index: isize, out: &mut String) -> usize {
    if at(v, index + 2) == b'H' {
        if matches_at(v, index + 3, 2, &["OO", "ER", "EN", "UY", "ED", "EM"]) {
            if matches_at(v, index + 3, 2, &["ER", "EN"]) {
                out.push('X');
            } else {
                out.push_str("SK");
            }
        } else {
            // The initial-SCH special case differs only in the alternate
            // code, which this port does not produce.
            out.push('X');
        }
    } else if matches_at(v, index + 2, 1, &["I", "E", "Y"]) {
        out.push('S');
    } else {
        out.push_str("SK");
    }
    2
}

fn handle_t(v: &[u8], index: isize, out: &mut String) -> usize {
    if matches_at(v, index, 4, &["TION"]) || matches_at(v, index, 3, &["TIA", "TCH"]) {
        out.push('X');
        2
    } else if matches_at(v, index, 2, &["TH"]) || matches_at(v, index, 3, &["TTH"]) {
        if matches_at(v, index + 2, 2, &["OM", "AM"])
            || matches_at(v, 0, 4, &["VAN ", "VON "])
            || matches_at(v, 0, 3, &["SCH"])
        {
            out.push('T');
        } else {
            out.push('0');
        }
        1
    } else {
        out.push('T');
        usize::from(matches_at(v, index + 1, 1, &["T", "D"]))
    }
}

fn handle_w(v: &[u8], index: isize, out: &mut String) -> usize {
    if matches_at(v, index, 2, &["WR"]) {
        out.push('R');
        1
    } else if index == 0 && (vowel_y(at(v, index + 1)) || matches_at(v, index, 2, &["WH"])) {
        out.push('A');
        0
    } else if (index > 0 && index == v.len() as isize - 1 && vowel_y(at(v, index - 1)))
        || matches_at(v, index - 1, 5, &["EWSKI", "EWSKY", "OWSKI", "OWSKY"])
        || matches_at(v, 0, 3, &["SCH"])
    {
        // Alternate-code-only F; the primary emits nothing here.
        0
    } else if matches_at(v, index, 4, &["WICZ", "WITZ"]) {
        out.push_str("TS");
        3
    } else {
        0
    }
}

fn handle_x(v: &[u8], index: isize, out: &mut String) -> usize {
    if index == 0 {
        out.push('S');
        0
    } else {
        let french_final = index == v.len() as isize - 1
            && (matches_at(v, index - 3, 3, &["IAU", "EAU"])
                || matches_at(v, index - 2, 2, &["AU", "OU"]));
        if !french_final {
            out.push_str("KS");
        }
        usize::from(matches_at(v, index + 1, 1, &["C", "X"]))
    }
}

fn handle_z(v: &[u8], index: isize, out: &mut String) -> usize {
    if at(v, index + 1) == b'H' {
        out.push('J');
        1
    } else {
        out.push('S');
        usize::from(at(v, index + 1) == b'Z')
    }
}
