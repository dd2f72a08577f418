//! Embedded data of the three optimal size-96 two-fold packings.

use std::sync::OnceLock;

use crate::code::Code;
use crate::error::{Error, Result};
use crate::linalg::{
    coset_union, gf2_span, gray_image, gray_map, orbit, z4_module_span, BinaryMatrix, MixedMatrix,
    MixedWord, PropelinearMap,
};
use crate::word::{Space, Word};

const GEN1: [&str; 5] = [
    "0011111100",
    "1100111010",
    "1111001001",
    "0101010111",
    "1010100111",
];

const CHECK1: [&str; 5] = [
    "1101100011",
    "0011001111",
    "0110110110",
    "1010111001",
    "1101011100",
];

const K1_REPS: [&str; 6] = [
    "0001001001",
    "0001001100",
    "0001011110",
    "0001010010",
    "0000010101",
    "0000010011",
];

// mixed words are written binary block first, then the quaternary block
const GEN2: [&str; 4] = ["1100|022", "1010|202", "1001|220", "0111|111"];
const CHECK2: [&str; 3] = ["1100|011", "1010|101", "1001|110"];
const GEN3: [&str; 3] = ["11|2222", "10|0111", "01|1031"];
const CHECK3: [&str; 3] = ["11|2222", "10|1110", "01|1301"];

const K2_REPS: [&str; 6] = [
    "01|1300", "10|1300", "00|2030", "10|1030", "01|0330", "11|3330",
];

const DISPLAY_SPAN: [&str; 4] = ["0001111011", "0010101010", "0100110100", "1000110111"];
const DISPLAY_TRANSLATES: [&str; 6] = [
    "0000000000",
    "0000100001",
    "0000100111",
    "0000101110",
    "0000111001",
    "0000111100",
];

const ORBIT_SEEDS: [&str; 6] = [
    "0000000111",
    "0000110100",
    "0000001101",
    "0000110001",
    "0000101010",
    "0000011010",
];

/// Matrices, coset representatives and group generators defining the
/// size-96 objects.
#[derive(Clone, Debug)]
pub struct EmbeddedData {
    pub gen1: BinaryMatrix,
    pub check1: BinaryMatrix,
    pub gen2: MixedMatrix,
    pub check2: MixedMatrix,
    pub gen3: MixedMatrix,
    pub check3: MixedMatrix,
    pub coset_reps_k1: Vec<Word>,
    pub coset_reps_k2: Vec<MixedWord>,
    pub display_span: BinaryMatrix,
    pub display_translates: Vec<Word>,
    /// `xi_0, xi_1, xi_2`.
    pub xi: Vec<PropelinearMap>,
    pub orbit_seeds: Vec<Word>,
}

fn words(strs: &[&str]) -> Result<Vec<Word>> {
    let space = Space::binary(10)?;
    strs.iter().map(|s| Word::parse(space, s)).collect()
}

impl EmbeddedData {
    /// Parses the data and runs [`EmbeddedData::self_check`].
    pub fn load() -> Result<Self> {
        let space = Space::binary(10)?;
        let xi = vec![
            PropelinearMap::from_cycles(&Word::parse(space, "1111111111")?, &[])?,
            PropelinearMap::from_cycles(&Word::parse(space, "0101001111")?, &[&[0, 1], &[2, 3]])?,
            PropelinearMap::from_cycles(
                &Word::parse(space, "0001010011")?,
                &[&[2, 3], &[4, 5], &[6, 7, 8, 9]],
            )?,
        ];
        let data = EmbeddedData {
            gen1: BinaryMatrix::from_strs(&GEN1)?,
            check1: BinaryMatrix::from_strs(&CHECK1)?,
            gen2: MixedMatrix::from_strs(4, 3, &GEN2)?,
            check2: MixedMatrix::from_strs(4, 3, &CHECK2)?,
            gen3: MixedMatrix::from_strs(2, 4, &GEN3)?,
            check3: MixedMatrix::from_strs(2, 4, &CHECK3)?,
            coset_reps_k1: words(&K1_REPS)?,
            coset_reps_k2: K2_REPS
                .iter()
                .map(|s| MixedWord::parse(s))
                .collect::<Result<_>>()?,
            display_span: BinaryMatrix::from_strs(&DISPLAY_SPAN)?,
            display_translates: words(&DISPLAY_TRANSLATES)?,
            xi,
            orbit_seeds: words(&ORBIT_SEEDS)?,
        };
        data.self_check()?;
        Ok(data)
    }

    /// Consistency checks between the matrices.
    pub fn self_check(&self) -> Result<()> {
        let fail = |msg: &str| Err(Error::SelfCheck(msg.to_string()));
        if self.gen1.num_rows() != 5 || self.check1.num_rows() != 5 || self.gen1.n() != 10 {
            return fail("binary matrices must be 5 x 10");
        }
        if self.gen2.rows().len() != 4
            || self.check2.rows().len() != 3
            || (self.gen2.binary_cols(), self.gen2.quaternary_cols()) != (4, 3)
            || (self.check2.binary_cols(), self.check2.quaternary_cols()) != (4, 3)
        {
            return fail("gen2/check2 must have 4 binary and 3 quaternary columns");
        }
        if (self.gen3.binary_cols(), self.gen3.quaternary_cols()) != (2, 4)
            || (self.check3.binary_cols(), self.check3.quaternary_cols()) != (2, 4)
        {
            return fail("gen3/check3 must have 2 binary and 4 quaternary columns");
        }
        for (row, expected) in self.gen2.rows().iter().zip(self.gen1.rows()) {
            if gray_map(row)?.bits() != Some(*expected) {
                return fail("Gray images of gen2 rows differ from the first rows of gen1");
            }
        }
        let mut a: Vec<u64> = (0..10).map(|j| self.gen1.column(j)).collect();
        let mut b: Vec<u64> = (0..10).map(|j| self.check1.column(j)).collect();
        a.sort_unstable();
        b.sort_unstable();
        if a != b {
            return fail("check1 columns are not a permutation of gen1 columns");
        }
        for g in self.gen1.rows() {
            for h in self.check1.rows() {
                if (g & h).count_ones() % 2 != 0 {
                    return fail("gen1 rows are not orthogonal to check1 rows");
                }
            }
        }
        if self.gen1.rank() != 5 || self.check1.rank() != 5 {
            return fail("gen1 and check1 must have full rank");
        }
        Ok(())
    }
}

/// The embedded data, parsed and checked once.
pub fn embedded() -> &'static EmbeddedData {
    static DATA: OnceLock<EmbeddedData> = OnceLock::new();
    DATA.get_or_init(|| EmbeddedData::load().expect("embedded data self-check"))
}

/// A completely regular code `C0` and the unitrade cell `C4` of its
/// five-cell equitable partition, both of length 10.
#[derive(Clone, Debug)]
pub struct Packing96 {
    pub c0: Code,
    pub c4: Code,
}

/// `C0` is the span of `gen1`; `C4` is the union of six cosets of the span
/// of its last four rows.
pub fn packing96_linear() -> Result<Packing96> {
    let d = embedded();
    let c0 = gf2_span(&d.gen1)?;
    let k = gf2_span(&d.gen1.select_rows(&[1, 2, 3, 4]))?;
    let c4 = coset_union(&k, &d.coset_reps_k1)?.code;
    Ok(Packing96 { c0, c4 })
}

/// Gray images in the coordinates of `gen3`: `C0` from the module spanned by
/// `gen3`, `C4` from six cosets of the module of its last two rows.
pub fn packing96_z2z4() -> Result<Packing96> {
    let d = embedded();
    let c0 = gray_image(&z4_module_span(&d.gen3), 10)?;
    let k = z4_module_span(&d.gen3.select_rows(&[1, 2]));
    let mut words = Vec::with_capacity(96);
    for r in &d.coset_reps_k2 {
        for w in &k {
            words.push(w.add(r));
        }
    }
    words.sort();
    words.dedup();
    let c4 = gray_image(&words, 10)?;
    Ok(Packing96 { c0, c4 })
}

/// The same Z2Z4-linear code described by `check2` used as a generator
/// matrix; equivalent to the `C0` of [`packing96_z2z4`] up to a coordinate
/// permutation.
pub fn z2z4_code_from_check2() -> Result<Code> {
    gray_image(&z4_module_span(&embedded().check2), 10)
}

/// Gray image of the module spanned by `check3`.
pub fn z2z4_code_from_check3() -> Result<Code> {
    gray_image(&z4_module_span(&embedded().check3), 10)
}

/// `C0` is the orbit of zero under `<xi_0, xi_1, xi_2>`; `C4` is the union of
/// six orbits under `<xi_1, xi_2>`.
pub fn packing96_propelinear() -> Result<Packing96> {
    let d = embedded();
    let zero = Word::zero(Space::binary(10)?);
    let c0 = orbit(&d.xi, &zero)?;
    let mut c4 = Code::empty(zero.space());
    for seed in &d.orbit_seeds {
        c4 = c4.union(&orbit(&d.xi[1..], seed)?)?;
    }
    Ok(Packing96 {
        c0,
        c4: c4.distinct(),
    })
}

/// The size-96 unitrade given as a span of four words and six translates.
pub fn classified_c4_display() -> Result<Code> {
    let d = embedded();
    let k = gf2_span(&d.display_span)?;
    Ok(coset_union(&k, &d.display_translates)?.code)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::gf2_rank;

    #[test]
    fn data_loads() {
        let d = EmbeddedData::load().unwrap();
        assert_eq!(d.xi.len(), 3);
        assert_eq!(d.coset_reps_k1.len(), 6);
    }

    #[test]
    fn self_check_catches_corruption() {
        let mut d = EmbeddedData::load().unwrap();
        d.check1 = BinaryMatrix::from_strs(&[
            "1101100011",
            "0011001111",
            "0110110110",
            "1010111001",
            "1101011101",
        ])
        .unwrap();
        assert!(d.self_check().is_err());
    }

    #[test]
    fn sizes_and_ranks() {
        let a = packing96_linear().unwrap();
        let b = packing96_z2z4().unwrap();
        let c = packing96_propelinear().unwrap();
        for p in [&a, &b, &c] {
            assert_eq!(p.c0.len(), 32);
            assert_eq!(p.c4.len(), 96);
            assert!(p.c4.is_set());
        }
        let ranks: Vec<usize> = [&a, &b, &c]
            .iter()
            .map(|p| gf2_rank(&p.c0).unwrap())
            .collect();
        assert_eq!(ranks, vec![5, 6, 7]);
        assert_eq!(classified_c4_display().unwrap().len(), 96);
        assert_eq!(z2z4_code_from_check2().unwrap().len(), 32);
        assert_eq!(gf2_rank(&z2z4_code_from_check2().unwrap()).unwrap(), 6);
    }
}
