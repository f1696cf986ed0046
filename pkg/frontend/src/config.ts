/** Tunables for the map client, kept in one place so behavior is easy to audit. */

/**
 * Strength of the focus+context distortion. The lens maps a normalized
 * distance d in [0, 1] to g(d) = (M + 1) * d / (M * d + 1): steep near the
 * focus, flat toward the rim, with g(0) = 0 and g(1) = 1 so nothing ever
 * leaves the viewport. 0 disables the lens entirely.
 */
export const FISHEYE_MAGNIFICATION = 2.5;

/** Glyph radius of an undistorted node, in viewport pixels. */
export const BASE_GLYPH_RADIUS = 5;

/** Fraction of the half-viewport kept clear between the outer ring and the edge. */
export const RIM_MARGIN = 0.08;

/** Service base used when the page does not override it with ?api=. */
export const DEFAULT_SERVICE_BASE = 'http://127.0.0.1:8765';
