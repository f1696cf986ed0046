/**
 * Radial tree placement with a bounded focus+context lens.
 *
 * The map never pans or zooms: every node of the taxonomy is always inside
 * the viewport, and attention is steered by distorting space around the
 * focused node instead of clipping the periphery. Layout is a pure function
 * of (tree, focus, viewport, magnification), so repeated calls with the same
 * arguments give byte-identical scenes.
 */

import { BASE_GLYPH_RADIUS, FISHEYE_MAGNIFICATION, RIM_MARGIN } from './config.js';
import type { TreeNode, TreePayload } from './types.js';

export interface Viewport {
  width: number;
  height: number;
}

export interface PlacedNode {
  code: string;
  depth: number;
  x: number;
  y: number;
  /** Glyph radius after the lens, in pixels. */
  r: number;
}

export type LayoutMap = Map<string, PlacedNode>;

/** Rows keyed by code, preserving the service's child ordering. */
export function indexTree(tree: TreePayload): Map<string, TreeNode> {
  const byCode = new Map<string, TreeNode>();
  for (const node of tree.nodes) {
    byCode.set(node.code, node);
  }
  return byCode;
}

/**
 * One-dimensional lens. Distances from the focus are normalized against the
 * room available on that side of the axis, then remapped with
 *
 *   g(d) = (M + 1) * d / (M * d + 1)
 *
 * which is monotone with g(0) = 0 and g(1) = 1. Points near the focus spread
 * apart, points near the rim compress, and the interval [lo, hi] maps onto
 * itself, which is what keeps the full overview visible at any focus.
 */
export function fisheye(
  value: number,
  focus: number,
  lo: number,
  hi: number,
  magnification: number,
): number {
  if (magnification <= 0 || value === focus) {
    return value;
  }
  const side = value > focus ? hi - focus : focus - lo;
  if (side <= 0) {
    return value;
  }
  const d = Math.min(Math.abs(value - focus) / side, 1);
  const g = ((magnification + 1) * d) / (magnification * d + 1);
  return focus + Math.sign(value - focus) * g * side;
}

interface BasePlacement {
  depth: number;
  x: number;
  y: number;
}

/**
 * Undistorted polar placement: the root sits at the center, each depth lives
 * on its own ring, and every subtree gets an angular slice proportional to
 * its leaf count so crowded branches claim more arc than thin ones.
 */
export function radialPositions(tree: TreePayload, viewport: Viewport): Map<string, BasePlacement> {
  const byCode = indexTree(tree);
  const placements = new Map<string, BasePlacement>();
  const cx = viewport.width / 2;
  const cy = viewport.height / 2;

  let maxDepth = 0;
  const depthOf = new Map<string, number>();
  const assignDepth = (code: string, depth: number): void => {
    depthOf.set(code, depth);
    maxDepth = Math.max(maxDepth, depth);
    for (const child of byCode.get(code)?.children ?? []) {
      assignDepth(child, depth + 1);
    }
  };
  assignDepth(tree.root, 0);

  const weights = new Map<string, number>();
  const weigh = (code: string): number => {
    const children = byCode.get(code)?.children ?? [];
    const w = children.length === 0 ? 1 : children.reduce((sum, c) => sum + weigh(c), 0);
    weights.set(code, w);
    return w;
  };
  weigh(tree.root);

  const usable = (Math.min(viewport.width, viewport.height) / 2) * (1 - RIM_MARGIN);
  const ringStep = maxDepth > 0 ? usable / maxDepth : 0;

  const place = (code: string, depth: number, startAngle: number, endAngle: number): void => {
    const angle = (startAngle + endAngle) / 2;
    const radius = depth * ringStep;
    placements.set(code, {
      depth,
      x: cx + radius * Math.cos(angle),
      y: cy + radius * Math.sin(angle),
    });
    const children = byCode.get(code)?.children ?? [];
    const total = children.reduce((sum, c) => sum + (weights.get(c) ?? 1), 0);
    if (total === 0) {
      return;
    }
    let cursor = startAngle;
    for (const child of children) {
      const span = ((endAngle - startAngle) * (weights.get(child) ?? 1)) / total;
      place(child, depth + 1, cursor, cursor + span);
      cursor += span;
    }
  };
  // start at 12 o'clock so the first top-level branch reads first
  place(tree.root, 0, -Math.PI / 2, (3 * Math.PI) / 2);

  return placements;
}

/**
 * Full scene: radial placement pushed through the lens centered on the
 * focused node, with glyph radii following the same falloff so the focus
 * reads larger than its periphery.
 */
export function layoutTree(
  tree: TreePayload,
  focusCode: string,
  viewport: Viewport,
  magnification: number = FISHEYE_MAGNIFICATION,
): LayoutMap {
  const base = radialPositions(tree, viewport);
  const focus = base.get(focusCode) ?? base.get(tree.root);
  const scene: LayoutMap = new Map();
  if (focus === undefined) {
    return scene;
  }

  for (const [code, spot] of base) {
    const x = fisheye(spot.x, focus.x, 0, viewport.width, magnification);
    const y = fisheye(spot.y, focus.y, 0, viewport.height, magnification);
    const dn = Math.min(
      Math.max(
        normalizedOffset(spot.x, focus.x, 0, viewport.width),
        normalizedOffset(spot.y, focus.y, 0, viewport.height),
      ),
      1,
    );
    const scale = magnification > 0 ? (magnification + 1) / (magnification * dn + 1) : 1;
    scene.set(code, { code, depth: spot.depth, x, y, r: BASE_GLYPH_RADIUS * scale });
  }
  return scene;
}

function normalizedOffset(value: number, focus: number, lo: number, hi: number): number {
  const side = value > focus ? hi - focus : focus - lo;
  if (side <= 0) {
    return 0;
  }
  return Math.abs(value - focus) / side;
}
