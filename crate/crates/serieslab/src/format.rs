//! Binary sequence files with a JSON provenance sidecar.
//!
//! Layout: the 8 bytes `SERIESEQ`, the alphabet size as little-endian `u32`,
//! the length as little-endian `u64`, then one byte per symbol. The sidecar
//! lives next to the file with `.json` appended to its name.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serieslab_core::{Alphabet, Provenance, SymbolSequence};

pub const MAGIC: &[u8; 8] = b"SERIESEQ";

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("not a SERIESEQ file")]
    BadMagic,
    #[error("truncated sequence file: expected {expected} symbols, found {found}")]
    Truncated { expected: u64, found: u64 },
    #[error("truncated sequence header")]
    TruncatedHeader,
    #[error("alphabet size {0} not supported (must be 2..=256)")]
    AlphabetSize(u32),
    #[error("sidecar disagrees with the sequence file: {0}")]
    Sidecar(String),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Core(#[from] serieslab_core::Error),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Sidecar {
    pub alphabet_size: usize,
    pub length: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    pub provenance: Provenance,
}

pub fn sidecar_path(path: &Path) -> PathBuf {
    let mut name = path.as_os_str().to_owned();
    name.push(".json");
    PathBuf::from(name)
}

pub fn encode<W: Write>(seq: &SymbolSequence, mut out: W) -> io::Result<()> {
    out.write_all(MAGIC)?;
    out.write_all(&(seq.alphabet().size() as u32).to_le_bytes())?;
    out.write_all(&(seq.len() as u64).to_le_bytes())?;
    out.write_all(seq.data())?;
    out.flush()
}

/// Reads the binary part; returns the alphabet size and the symbols.
pub fn decode<R: Read>(mut input: R) -> Result<(usize, Vec<u8>), FormatError> {
    let mut header = [0u8; 20];
    let mut got = 0;
    while got < header.len() {
        let k = input.read(&mut header[got..])?;
        if k == 0 {
            break;
        }
        got += k;
    }
    if got < 8 || &header[..8] != MAGIC {
        return Err(FormatError::BadMagic);
    }
    if got < header.len() {
        return Err(FormatError::TruncatedHeader);
    }
    let size = u32::from_le_bytes(header[8..12].try_into().unwrap());
    if !(2..=256).contains(&size) {
        return Err(FormatError::AlphabetSize(size));
    }
    let length = u64::from_le_bytes(header[12..20].try_into().unwrap());
    let mut data = Vec::with_capacity(length.min(1 << 32) as usize);
    input.take(length).read_to_end(&mut data)?;
    if data.len() as u64 != length {
        return Err(FormatError::Truncated {
            expected: length,
            found: data.len() as u64,
        });
    }
    Ok((size as usize, data))
}

pub fn write_sequence(path: &Path, seq: &SymbolSequence) -> Result<(), FormatError> {
    let file = fs::File::create(path)?;
    encode(seq, io::BufWriter::new(file))?;
    let sidecar = Sidecar {
        alphabet_size: seq.alphabet().size(),
        length: seq.len(),
        labels: seq.alphabet().labels().map(<[String]>::to_vec),
        provenance: seq.provenance().clone(),
    };
    let mut text = serde_json::to_string_pretty(&sidecar)?;
    text.push('\n');
    fs::write(sidecar_path(path), text)?;
    Ok(())
}

/// Reads a sequence file. Without a sidecar the provenance records only the
/// file name.
pub fn read_sequence(path: &Path) -> Result<SymbolSequence, FormatError> {
    let (size, data) = decode(io::BufReader::new(fs::File::open(path)?))?;
    let side = sidecar_path(path);
    let (alphabet, provenance) = if side.exists() {
        let sidecar: Sidecar = serde_json::from_str(&fs::read_to_string(&side)?)?;
        if sidecar.alphabet_size != size || sidecar.length != data.len() {
            return Err(FormatError::Sidecar(format!(
                "sidecar says {} symbols over {}, file has {} over {}",
                sidecar.length,
                sidecar.alphabet_size,
                data.len(),
                size
            )));
        }
        let alphabet = match sidecar.labels {
            Some(labels) => Alphabet::with_labels(labels)?,
            None => Alphabet::new(size)?,
        };
        (alphabet, sidecar.provenance)
    } else {
        let provenance = Provenance {
            generator: "file".into(),
            digest: path.display().to_string(),
            seed: 0,
        };
        (Alphabet::new(size)?, provenance)
    };
    Ok(SymbolSequence::new(alphabet, data, provenance)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_layout() {
        let seq = SymbolSequence::new(
            Alphabet::new(3).unwrap(),
            vec![0, 2, 1],
            Provenance {
                generator: "t".into(),
                digest: "d".into(),
                seed: 1,
            },
        )
        .unwrap();
        let mut buf = Vec::new();
        encode(&seq, &mut buf).unwrap();
        assert_eq!(&buf[..8], b"SERIESEQ");
        assert_eq!(&buf[8..12], &[3, 0, 0, 0]);
        assert_eq!(&buf[12..20], &[3, 0, 0, 0, 0, 0, 0, 0]);
        assert_eq!(&buf[20..], &[0, 2, 1]);
        assert_eq!(decode(&buf[..]).unwrap(), (3, vec![0, 2, 1]));
    }

    #[test]
    fn rejects_garbage() {
        assert!(matches!(
            decode(&b"NOTMAGIC...."[..]),
            Err(FormatError::BadMagic)
        ));
        assert!(matches!(decode(&b"SER"[..]), Err(FormatError::BadMagic)));
        let mut buf = b"SERIESEQ".to_vec();
        buf.extend(2u32.to_le_bytes());
        buf.extend(5u64.to_le_bytes());
        buf.extend([0, 1]);
        assert!(matches!(
            decode(&buf[..]),
            Err(FormatError::Truncated { .. })
        ));
    }

    #[test]
    fn symbols_must_fit_the_alphabet() {
        let mut buf = b"SERIESEQ".to_vec();
        buf.extend(2u32.to_le_bytes());
        buf.extend(2u64.to_le_bytes());
        buf.extend([0, 7]);
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.bin");
        fs::write(&path, buf).unwrap();
        assert!(matches!(read_sequence(&path), Err(FormatError::Core(_))));
    }
}
