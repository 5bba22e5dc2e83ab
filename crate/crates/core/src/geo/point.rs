use std::fmt;

use crate::error::{Error, Result};

/// A WGS84-style coordinate in decimal degrees.
///
/// Construction validates that both components are finite and in range, so
/// every `GeoPoint` in the crate is well formed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeoPoint {
    lat: f64,
    lon: f64,
}

impl GeoPoint {
    pub fn new(lat: f64, lon: f64) -> Result<Self> {
        if !lat.is_finite() || !lon.is_finite() {
            return Err(Error::InvalidInput(format!(
                "non-finite coordinate ({lat}, {lon})"
            )));
        }
        if !(-90.0..=90.0).contains(&lat) {
            return Err(Error::InvalidInput(format!(
                "latitude {lat} outside [-90, 90]"
            )));
        }
        if !(-180.0..=180.0).contains(&lon) {
            return Err(Error::InvalidInput(format!(
                "longitude {lon} outside [-180, 180]"
            )));
        }
        Ok(GeoPoint { lat, lon })
    }

    #[inline]
    pub fn lat(&self) -> f64 {
        self.lat
    }

    #[inline]
    pub fn lon(&self) -> f64 {
        self.lon
    }
}

impl fmt::Display for GeoPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.lat, self.lon)
    }
}

/// A sexagesimal angle (degrees, minutes, seconds), non-negative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dms {
    pub degrees: u32,
    pub minutes: u32,
    pub seconds: f64,
}

impl Dms {
    pub fn new(degrees: u32, minutes: u32, seconds: f64) -> Self {
        Dms {
            degrees,
            minutes,
            seconds,
        }
    }

    /// Carries whole 60″ into minutes and 60′ into degrees, so that
    /// `32°34'60"` becomes `32°35'00"`.
    pub fn normalized(self) -> Self {
        let mut seconds = self.seconds;
        let mut minutes = self.minutes;
        let mut degrees = self.degrees;
        while seconds >= 60.0 {
            seconds -= 60.0;
            minutes += 1;
        }
        degrees += minutes / 60;
        minutes %= 60;
        Dms {
            degrees,
            minutes,
            seconds,
        }
    }

    pub fn to_decimal(self) -> f64 {
        let n = self.normalized();
        f64::from(n.degrees) + f64::from(n.minutes) / 60.0 + n.seconds / 3600.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_out_of_range_and_non_finite() {
        assert!(GeoPoint::new(91.0, 0.0).is_err());
        assert!(GeoPoint::new(-90.5, 0.0).is_err());
        assert!(GeoPoint::new(0.0, 180.1).is_err());
        assert!(GeoPoint::new(f64::NAN, 0.0).is_err());
        assert!(GeoPoint::new(0.0, f64::INFINITY).is_err());
        assert!(GeoPoint::new(90.0, -180.0).is_ok());
    }

    #[test]
    fn dms_sixty_seconds_carries_into_minutes() {
        let pdk = Dms::new(32, 34, 60.0).normalized();
        assert_eq!(pdk, Dms::new(32, 35, 0.0));
        assert!((Dms::new(32, 34, 60.0).to_decimal() - 32.583_333_333).abs() < 1e-9);
        assert!((Dms::new(73, 2, 60.0).to_decimal() - 73.05).abs() < 1e-12);
    }

    #[test]
    fn dms_named_places() {
        // Dina and Sohawa as printed, rounded to four decimals.
        let round4 = |x: f64| (x * 1e4).round() / 1e4;
        assert_eq!(round4(Dms::new(33, 1, 42.0).to_decimal()), 33.0283);
        assert_eq!(round4(Dms::new(73, 36, 4.0).to_decimal()), 73.6011);
        assert_eq!(round4(Dms::new(32, 49, 30.0).to_decimal()), 32.825);
        assert_eq!(round4(Dms::new(73, 45, 55.0).to_decimal()), 73.7653);
    }
}
