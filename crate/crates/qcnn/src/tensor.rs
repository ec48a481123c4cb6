//! Dense rank-3 tensors of quaternions and reals, with the real↔quaternion
//! view used by multi-channel convolution and input encoding.
//!
//! Layout is row-major with the channel index innermost. The real view of a
//! quaternion tensor interleaves components as consecutive real channels
//! `(r, i, j, k)` per quaternion channel, so `4·s + c` maps to component `c`
//! of quaternion channel `s`.

use crate::error::{Error, Result};
use crate::quaternion::Quaternion;

#[derive(Clone, Debug, PartialEq)]
pub struct QTensor {
    rows: usize,
    cols: usize,
    channels: usize,
    data: Vec<Quaternion>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RealTensor {
    rows: usize,
    cols: usize,
    channels: usize,
    data: Vec<f64>,
}

impl QTensor {
    pub fn zeros(rows: usize, cols: usize, channels: usize) -> Self {
        Self { rows, cols, channels, data: vec![Quaternion::ZERO; rows * cols * channels] }
    }

    pub fn from_data(rows: usize, cols: usize, channels: usize, data: Vec<Quaternion>) -> Result<Self> {
        if data.len() != rows * cols * channels {
            return Err(Error::ShapeMismatch(format!(
                "expected {} quaternions for {}x{}x{}, got {}",
                rows * cols * channels,
                rows,
                cols,
                channels,
                data.len()
            )));
        }
        Ok(Self { rows, cols, channels, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn channels(&self) -> usize {
        self.channels
    }

    pub fn shape(&self) -> (usize, usize, usize) {
        (self.rows, self.cols, self.channels)
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize, ch: usize) -> Quaternion {
        self.data[(row * self.cols + col) * self.channels + ch]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, ch: usize, q: Quaternion) {
        self.data[(row * self.cols + col) * self.channels + ch] = q;
    }

    pub fn data(&self) -> &[Quaternion] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [Quaternion] {
        &mut self.data
    }

    /// Applies `f` to every element, preserving shape.
    pub fn map(&self, f: impl Fn(Quaternion) -> Quaternion) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            channels: self.channels,
            data: self.data.iter().map(|&q| f(q)).collect(),
        }
    }

    /// The `(rows, cols, 4·channels)` real tensor carrying the same values.
    pub fn real_view(&self) -> RealTensor {
        let mut data = Vec::with_capacity(self.data.len() * 4);
        for q in &self.data {
            data.extend_from_slice(&[q.r, q.i, q.j, q.k]);
        }
        RealTensor { rows: self.rows, cols: self.cols, channels: self.channels * 4, data }
    }

    /// Inverse of [`real_view`](Self::real_view); requires `channels % 4 == 0`.
    pub fn from_real_view(t: &RealTensor) -> Result<Self> {
        if t.channels % 4 != 0 {
            return Err(Error::ChannelMismatch { expected: 4, got: t.channels });
        }
        let data = t
            .data
            .chunks_exact(4)
            .map(|c| Quaternion::new(c[0], c[1], c[2], c[3]))
            .collect();
        Ok(Self { rows: t.rows, cols: t.cols, channels: t.channels / 4, data })
    }
}

impl RealTensor {
    pub fn zeros(rows: usize, cols: usize, channels: usize) -> Self {
        Self { rows, cols, channels, data: vec![0.0; rows * cols * channels] }
    }

    pub fn from_data(rows: usize, cols: usize, channels: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != rows * cols * channels {
            return Err(Error::ShapeMismatch(format!(
                "expected {} values for {}x{}x{}, got {}",
                rows * cols * channels,
                rows,
                cols,
                channels,
                data.len()
            )));
        }
        Ok(Self { rows, cols, channels, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn channels(&self) -> usize {
        self.channels
    }

    pub fn shape(&self) -> (usize, usize, usize) {
        (self.rows, self.cols, self.channels)
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize, ch: usize) -> f64 {
        self.data[(row * self.cols + col) * self.channels + ch]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, ch: usize, v: f64) {
        self.data[(row * self.cols + col) * self.channels + ch] = v;
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }
}

/// Encodes an RGB image (3 channels in `[0,1]`) as one quaternion channel
/// per pixel: `(0, R, G, B)`.
pub fn encode_rgb(image: &RealTensor) -> Result<QTensor> {
    if image.channels != 3 {
        return Err(Error::ChannelMismatch { expected: 3, got: image.channels });
    }
    let data = image
        .data
        .chunks_exact(3)
        .map(|p| Quaternion::new(0.0, p[0], p[1], p[2]))
        .collect();
    Ok(QTensor { rows: image.rows, cols: image.cols, channels: 1, data })
}

/// Encodes a grayscale image (1 channel) as pure-real quaternions `(g, 0, 0, 0)`.
pub fn encode_gray(image: &RealTensor) -> Result<QTensor> {
    if image.channels != 1 {
        return Err(Error::ChannelMismatch { expected: 1, got: image.channels });
    }
    let data = image.data.iter().map(|&g| Quaternion::from_real(g)).collect();
    Ok(QTensor { rows: image.rows, cols: image.cols, channels: 1, data })
}

/// Splits a real tensor with `C % 4 == 0` channels into `C/4` single-channel
/// quaternion tensors; consecutive real channels `(4s, 4s+1, 4s+2, 4s+3)`
/// become the `(r, i, j, k)` components of quaternion channel `s`.
pub fn partition4(x: &RealTensor) -> Result<Vec<QTensor>> {
    if x.channels % 4 != 0 {
        return Err(Error::ChannelMismatch { expected: 4, got: x.channels });
    }
    let groups = x.channels / 4;
    let mut out = vec![QTensor::zeros(x.rows, x.cols, 1); groups];
    for row in 0..x.rows {
        for col in 0..x.cols {
            for (s, t) in out.iter_mut().enumerate() {
                let q = Quaternion::new(
                    x.get(row, col, 4 * s),
                    x.get(row, col, 4 * s + 1),
                    x.get(row, col, 4 * s + 2),
                    x.get(row, col, 4 * s + 3),
                );
                t.set(row, col, 0, q);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn encode_rgb_puts_channels_in_imaginary_parts() {
        let img = RealTensor::from_data(1, 1, 3, vec![0.2, 0.4, 0.6]).unwrap();
        let q = encode_rgb(&img).unwrap();
        assert_eq!(q.get(0, 0, 0), Quaternion::new(0.0, 0.2, 0.4, 0.6));
    }

    #[test]
    fn encode_rgb_black_and_white_pixels() {
        let img = RealTensor::from_data(1, 2, 3, vec![0.0, 0.0, 0.0, 1.0, 1.0, 1.0]).unwrap();
        let q = encode_rgb(&img).unwrap();
        assert_eq!(q.get(0, 0, 0), Quaternion::ZERO);
        assert_eq!(q.get(0, 1, 0), Quaternion::new(0.0, 1.0, 1.0, 1.0));
        // pure imaginary encoding sits on the π/2 phase boundary
        assert!((q.get(0, 1, 0).phase() - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn encode_rgb_rejects_wrong_channel_count() {
        let img = RealTensor::zeros(2, 2, 1);
        assert!(encode_rgb(&img).is_err());
    }

    #[test]
    fn encode_gray_maps_to_real_part() {
        let img = RealTensor::from_data(1, 2, 1, vec![0.5, 0.0]).unwrap();
        let q = encode_gray(&img).unwrap();
        assert_eq!(q.get(0, 0, 0), Quaternion::new(0.5, 0.0, 0.0, 0.0));
        assert_eq!(q.get(0, 1, 0), Quaternion::ZERO);
    }

    #[test]
    fn encode_gray_real_view_round_trip() {
        let img = RealTensor::from_data(2, 2, 1, vec![0.1, 0.2, 0.3, 0.4]).unwrap();
        let q = encode_gray(&img).unwrap();
        let rv = q.real_view();
        for row in 0..2 {
            for col in 0..2 {
                assert_eq!(rv.get(row, col, 0), img.get(row, col, 0));
            }
        }
    }

    #[test]
    fn encode_gray_rejects_multichannel() {
        let img = RealTensor::zeros(2, 2, 3);
        assert!(encode_gray(&img).is_err());
    }

    #[test]
    fn partition4_identity_on_four_channels() {
        let x = RealTensor::from_data(1, 1, 4, vec![1.0, 2.0, 3.0, 4.0]).unwrap();
        let parts = partition4(&x).unwrap();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0].get(0, 0, 0), Quaternion::new(1.0, 2.0, 3.0, 4.0));
    }

    #[test]
    fn partition4_round_trip_on_eight_channels() {
        let data: Vec<f64> = (0..2 * 3 * 8).map(|v| v as f64 * 0.25).collect();
        let x = RealTensor::from_data(2, 3, 8, data).unwrap();
        let parts = partition4(&x).unwrap();
        assert_eq!(parts.len(), 2);
        for row in 0..2 {
            for col in 0..3 {
                for s in 0..2 {
                    let q = parts[s].get(row, col, 0);
                    assert_eq!(q.r, x.get(row, col, 4 * s));
                    assert_eq!(q.i, x.get(row, col, 4 * s + 1));
                    assert_eq!(q.j, x.get(row, col, 4 * s + 2));
                    assert_eq!(q.k, x.get(row, col, 4 * s + 3));
                }
            }
        }
    }

    #[test]
    fn partition4_rejects_uneven_channels() {
        let x = RealTensor::zeros(2, 2, 6);
        assert!(partition4(&x).is_err());
    }

    #[test]
    fn real_view_round_trip_is_exact() {
        let mut t = QTensor::zeros(2, 2, 3);
        let mut v = 0.0;
        for row in 0..2 {
            for col in 0..2 {
                for ch in 0..3 {
                    t.set(row, col, ch, Quaternion::new(v, v + 0.1, v + 0.2, v + 0.3));
                    v += 1.0;
                }
            }
        }
        let back = QTensor::from_real_view(&t.real_view()).unwrap();
        assert_eq!(back, t);
    }
}
