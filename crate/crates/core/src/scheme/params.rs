use std::fmt;
use std::str::FromStr;

use sha2::{Digest, Sha256};

use crate::error::SchemeError;

/// Largest supported N; keeps the reveal space at 2^(2N+1) <= 512.
pub const MAX_N: usize = 4;

/// Where a mask assignment came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Preset {
    /// N = 1 coin toss with masks `01` (head) and `11` (tail).
    PaperCoinToss,
    /// `d_c = c + 1`.
    DefaultMasks,
    Custom,
}

impl Preset {
    pub fn name(self) -> &'static str {
        match self {
            Preset::PaperCoinToss => "paper-cointoss",
            Preset::DefaultMasks => "default-masks",
            Preset::Custom => "custom",
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Preset {
    type Err = SchemeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "paper-cointoss" => Ok(Preset::PaperCoinToss),
            "default-masks" => Ok(Preset::DefaultMasks),
            "custom" => Ok(Preset::Custom),
            other => Err(SchemeError::UnknownPreset(other.to_owned())),
        }
    }
}

/// N plus the injective choice-to-mask map.
///
/// Choice `c` pairs every (N+1)-bit string `x` with `x ^ masks[c]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SchemeParams {
    n: usize,
    masks: Vec<u32>,
    preset: Preset,
}

impl SchemeParams {
    pub fn paper_cointoss() -> Self {
        Self {
            n: 1,
            masks: vec![0b01, 0b11],
            preset: Preset::PaperCoinToss,
        }
    }

    pub fn default_masks(n: usize) -> Result<Self, SchemeError> {
        check_n(n)?;
        Ok(Self {
            n,
            masks: (1..=(1u32 << n)).collect(),
            preset: Preset::DefaultMasks,
        })
    }

    pub fn with_masks(n: usize, masks: Vec<u32>) -> Result<Self, SchemeError> {
        check_n(n)?;
        validate_masks(n, &masks)?;
        Ok(Self {
            n,
            masks,
            preset: Preset::Custom,
        })
    }

    pub fn from_preset(preset: Preset, n: usize) -> Result<Self, SchemeError> {
        match preset {
            Preset::PaperCoinToss if n == 1 => Ok(Self::paper_cointoss()),
            Preset::PaperCoinToss => Err(SchemeError::Descriptor(format!(
                "preset paper-cointoss requires N=1, got N={n}"
            ))),
            Preset::DefaultMasks => Self::default_masks(n),
            Preset::Custom => Err(SchemeError::Descriptor(
                "custom preset needs an explicit mask list".into(),
            )),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn masks(&self) -> &[u32] {
        &self.masks
    }

    pub fn mask(&self, choice: usize) -> u32 {
        self.masks[choice]
    }

    pub fn preset(&self) -> Preset {
        self.preset
    }

    /// 2^N.
    pub fn num_choices(&self) -> usize {
        1 << self.n
    }

    pub fn alice_qubits(&self) -> usize {
        self.n + 1
    }

    pub fn bob_qubits(&self) -> usize {
        self.n
    }

    pub fn check_choice(&self, choice: usize) -> Result<(), SchemeError> {
        if choice >= self.num_choices() {
            return Err(SchemeError::ChoiceOutOfRange {
                choice,
                choices: self.num_choices(),
            });
        }
        Ok(())
    }

    /// Canonical text descriptor; the scheme hash is taken over these bytes.
    pub fn to_descriptor(&self) -> String {
        let masks: Vec<String> = self.masks.iter().map(|m| format!("{m:#x}")).collect();
        format!(
            "qbc-scheme v1\nn={}\nmasks={}\npreset={}\n",
            self.n,
            masks.join(","),
            self.preset
        )
    }

    pub fn from_descriptor(text: &str) -> Result<Self, SchemeError> {
        let bad = |msg: String| SchemeError::Descriptor(msg);
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        match lines.next() {
            Some("qbc-scheme v1") => {}
            other => return Err(bad(format!("expected header 'qbc-scheme v1', got {other:?}"))),
        }
        let (mut n, mut masks, mut preset) = (None, None, None);
        for line in lines {
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| bad(format!("expected key=value, got {line:?}")))?;
            match key.trim() {
                "n" => {
                    n = Some(
                        value
                            .trim()
                            .parse::<usize>()
                            .map_err(|e| bad(format!("n: {e}")))?,
                    )
                }
                "masks" => masks = Some(parse_mask_list(value)?),
                "preset" => preset = Some(value.trim().parse::<Preset>()?),
                other => return Err(bad(format!("unknown key {other:?}"))),
            }
        }
        let n = n.ok_or_else(|| bad("missing n".into()))?;
        let masks = masks.ok_or_else(|| bad("missing masks".into()))?;
        let preset = preset.unwrap_or(Preset::Custom);
        let params = Self::with_masks(n, masks)?;
        if preset != Preset::Custom {
            let expected = Self::from_preset(preset, n)?;
            if expected.masks != params.masks {
                return Err(bad(format!("masks do not match preset {preset}")));
            }
            return Ok(expected);
        }
        Ok(params)
    }

    /// Hex SHA-256 of the descriptor; exchanged in the protocol handshake.
    pub fn scheme_hash(&self) -> String {
        hex::encode(Sha256::digest(self.to_descriptor().as_bytes()))
    }
}

/// Parses `0x1,0x3` / `1 3` style hex lists.
pub fn parse_mask_list(text: &str) -> Result<Vec<u32>, SchemeError> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            let digits = t
                .strip_prefix("0x")
                .or_else(|| t.strip_prefix("0X"))
                .unwrap_or(t);
            u32::from_str_radix(digits, 16)
                .map_err(|e| SchemeError::Descriptor(format!("bad hex mask {t:?}: {e}")))
        })
        .collect()
}

fn check_n(n: usize) -> Result<(), SchemeError> {
    if !(1..=MAX_N).contains(&n) {
        return Err(SchemeError::UnsupportedN(n));
    }
    Ok(())
}

fn validate_masks(n: usize, masks: &[u32]) -> Result<(), SchemeError> {
    let choices = 1usize << n;
    if masks.len() != choices {
        return Err(SchemeError::MaskCount {
            n,
            expected: choices,
            actual: masks.len(),
        });
    }
    for (choice, &mask) in masks.iter().enumerate() {
        if mask == 0 {
            return Err(SchemeError::ZeroMask(choice));
        }
        if mask >> (n + 1) != 0 {
            return Err(SchemeError::MaskTooWide {
                choice,
                mask,
                bits: n + 1,
            });
        }
        if let Some(first) = masks[..choice].iter().position(|&m| m == mask) {
            return Err(SchemeError::DuplicateMask {
                mask,
                first,
                second: choice,
            });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets() {
        let p = SchemeParams::paper_cointoss();
        assert_eq!(p.masks(), &[0b01, 0b11]);
        assert_eq!(p.num_choices(), 2);
        let d = SchemeParams::default_masks(2).unwrap();
        assert_eq!(d.masks(), &[1, 2, 3, 4]);
        assert_eq!(d.alice_qubits(), 3);
    }

    #[test]
    fn n_range() {
        assert_eq!(SchemeParams::default_masks(0), Err(SchemeError::UnsupportedN(0)));
        assert_eq!(SchemeParams::default_masks(5), Err(SchemeError::UnsupportedN(5)));
        assert!(SchemeParams::default_masks(4).is_ok());
    }

    #[test]
    fn mask_violations_are_named() {
        assert_eq!(
            SchemeParams::with_masks(1, vec![1, 1]),
            Err(SchemeError::DuplicateMask {
                mask: 1,
                first: 0,
                second: 1
            })
        );
        assert_eq!(SchemeParams::with_masks(1, vec![0, 1]), Err(SchemeError::ZeroMask(0)));
        assert!(matches!(
            SchemeParams::with_masks(1, vec![1, 4]),
            Err(SchemeError::MaskTooWide { .. })
        ));
        assert!(matches!(
            SchemeParams::with_masks(1, vec![1]),
            Err(SchemeError::MaskCount { .. })
        ));
    }

    #[test]
    fn descriptor_round_trip() {
        for p in [
            SchemeParams::paper_cointoss(),
            SchemeParams::default_masks(3).unwrap(),
            SchemeParams::with_masks(1, vec![2, 3]).unwrap(),
        ] {
            let text = p.to_descriptor();
            assert_eq!(SchemeParams::from_descriptor(&text).unwrap(), p);
        }
        assert_eq!(
            SchemeParams::paper_cointoss().to_descriptor(),
            "qbc-scheme v1\nn=1\nmasks=0x1,0x3\npreset=paper-cointoss\n"
        );
    }

    #[test]
    fn descriptor_errors() {
        assert!(SchemeParams::from_descriptor("n=1\nmasks=1,3\n").is_err());
        assert!(SchemeParams::from_descriptor("qbc-scheme v1\nn=1\n").is_err());
        assert!(SchemeParams::from_descriptor(
            "qbc-scheme v1\nn=1\nmasks=0x1,0x2\npreset=paper-cointoss\n"
        )
        .is_err());
        assert!(SchemeParams::from_descriptor("qbc-scheme v1\nn=1\nmasks=zz,1\n").is_err());
    }

    #[test]
    fn hash_separates_schemes() {
        let a = SchemeParams::paper_cointoss().scheme_hash();
        let b = SchemeParams::default_masks(1).unwrap().scheme_hash();
        assert_eq!(a.len(), 64);
        assert_ne!(a, b);
        assert_eq!(a, SchemeParams::paper_cointoss().scheme_hash());
    }

    #[test]
    fn mask_list_parsing() {
        assert_eq!(parse_mask_list("0x1,0x3").unwrap(), vec![1, 3]);
        assert_eq!(parse_mask_list("a b  f").unwrap(), vec![10, 11, 15]);
    }
}
