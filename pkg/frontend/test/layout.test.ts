import { describe, expect, it } from 'vitest';

import { FISHEYE_MAGNIFICATION } from '../src/config.js';
import { fisheye, layoutTree, radialPositions } from '../src/layout.js';
import type { Viewport } from '../src/layout.js';
import type { TreePayload } from '../src/types.js';
import { fixture } from './helpers.js';

const tree = fixture<TreePayload>('tree.json');
const vp: Viewport = { width: 900, height: 640 };

describe('fisheye', () => {
  it('keeps the interval endpoints fixed', () => {
    expect(fisheye(0, 300, 0, 900, 3)).toBe(0);
    expect(fisheye(900, 300, 0, 900, 3)).toBe(900);
    expect(fisheye(300, 300, 0, 900, 3)).toBe(300);
  });

  it('never maps inside points outside the interval', () => {
    for (let v = 0; v <= 900; v += 37) {
      const out = fisheye(v, 277, 0, 900, FISHEYE_MAGNIFICATION);
      expect(out).toBeGreaterThanOrEqual(0);
      expect(out).toBeLessThanOrEqual(900);
    }
  });

  it('is monotone, so glyph order along an axis survives the lens', () => {
    let prev = -1;
    for (let v = 0; v <= 900; v += 9) {
      const out = fisheye(v, 450, 0, 900, FISHEYE_MAGNIFICATION);
      expect(out).toBeGreaterThan(prev);
      prev = out;
    }
  });

  it('magnifies near the focus and compresses near the rim', () => {
    const near = fisheye(460, 450, 0, 900, 3) - fisheye(450, 450, 0, 900, 3);
    const far = fisheye(890, 450, 0, 900, 3) - fisheye(880, 450, 0, 900, 3);
    expect(near).toBeGreaterThan(10);
    expect(far).toBeLessThan(10);
  });

  it('is the identity at magnification zero', () => {
    for (let v = 0; v <= 900; v += 50) {
      expect(fisheye(v, 200, 0, 900, 0)).toBe(v);
    }
  });
});

describe('layoutTree', () => {
  it('is deterministic for a given tree, focus, and viewport', () => {
    const a = layoutTree(tree, 'H.3', vp);
    const b = layoutTree(tree, 'H.3', vp);
    expect([...a.entries()]).toEqual([...b.entries()]);
  });

  it('reproduces the same scene after focusing elsewhere and back', () => {
    const first = layoutTree(tree, 'H.3', vp);
    layoutTree(tree, 'A.2', vp);
    const again = layoutTree(tree, 'H.3', vp);
    expect([...first.entries()]).toEqual([...again.entries()]);
  });

  it('places every node of the tree, whatever the focus', () => {
    for (const focus of ['CS', 'H.3', 'A.2', 'K.2']) {
      const scene = layoutTree(tree, focus, vp);
      expect(scene.size).toBe(tree.nodes.length);
    }
  });

  it('keeps the whole overview inside the viewport at any focus', () => {
    for (const focus of tree.nodes.map((n) => n.code)) {
      const scene = layoutTree(tree, focus, vp);
      for (const spot of scene.values()) {
        expect(spot.x).toBeGreaterThanOrEqual(0);
        expect(spot.x).toBeLessThanOrEqual(vp.width);
        expect(spot.y).toBeGreaterThanOrEqual(0);
        expect(spot.y).toBeLessThanOrEqual(vp.height);
      }
    }
  });

  it('keeps every top-level branch in the scene when focused deep in one subtree', () => {
    const scene = layoutTree(tree, 'H.3.1', vp);
    const topLevel = tree.nodes.filter((n) => n.parent === tree.root);
    expect(topLevel.length).toBeGreaterThan(0);
    for (const branch of topLevel) {
      expect(scene.has(branch.code)).toBe(true);
    }
  });

  it('renders the focused glyph larger than any other', () => {
    const scene = layoutTree(tree, 'H.3', vp);
    const focusR = scene.get('H.3')!.r;
    for (const spot of scene.values()) {
      if (spot.code !== 'H.3') {
        expect(spot.r).toBeLessThan(focusR);
      }
    }
  });

  it('falls back to the root when asked to focus a code it cannot place', () => {
    const scene = layoutTree(tree, 'ZZZ', vp);
    expect(scene.size).toBe(tree.nodes.length);
  });
});

describe('radialPositions', () => {
  it('pins the root to the center', () => {
    const base = radialPositions(tree, vp);
    const root = base.get(tree.root)!;
    expect(root.x).toBeCloseTo(vp.width / 2);
    expect(root.y).toBeCloseTo(vp.height / 2);
  });

  it('puts siblings on the same ring', () => {
    const base = radialPositions(tree, vp);
    const byCode = new Map(tree.nodes.map((n) => [n.code, n]));
    const dist = (code: string): number => {
      const p = base.get(code)!;
      return Math.hypot(p.x - vp.width / 2, p.y - vp.height / 2);
    };
    const siblings = byCode.get(tree.root)!.children;
    expect(siblings.length).toBeGreaterThan(1);
    const first = dist(siblings[0]!);
    for (const code of siblings) {
      expect(dist(code)).toBeCloseTo(first);
    }
  });
});
