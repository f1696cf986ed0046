/** SVG renderer for the taxonomy map. Pure string producer, no DOM access. */

import { esc } from './html.js';
import { indexTree } from './layout.js';
import type { LayoutMap, Viewport } from './layout.js';
import { labelFor } from './state.js';
import type { Language, TreePayload } from './types.js';

export interface MapRender {
  tree: TreePayload;
  scene: LayoutMap;
  focus: string;
  lang: Language;
  viewport: Viewport;
  /** Proximity neighbors of the focused node, when its detail has loaded. */
  neighbors?: string[];
}

const px = (value: number): string => value.toFixed(2);

export function renderMap(opts: MapRender): string {
  const { tree, scene, focus, lang, viewport } = opts;
  const byCode = indexTree(tree);
  const neighborSet = new Set(opts.neighbors ?? []);

  const focusRow = byCode.get(focus);
  const contextSet = new Set<string>();
  if (focusRow !== undefined) {
    if (focusRow.parent !== null) {
      contextSet.add(focusRow.parent);
    }
    for (const child of focusRow.children) {
      contextSet.add(child);
    }
  }

  const edges: string[] = [];
  const glyphs: string[] = [];

  for (const row of tree.nodes) {
    const spot = scene.get(row.code);
    if (spot === undefined) {
      continue;
    }
    if (row.parent !== null) {
      const from = scene.get(row.parent);
      if (from !== undefined) {
        const hot = row.code === focus || row.parent === focus;
        edges.push(
          `<line class="edge${hot ? ' edge-focus' : ''}"` +
            ` x1="${px(from.x)}" y1="${px(from.y)}" x2="${px(spot.x)}" y2="${px(spot.y)}"/>`,
        );
      }
    }

    const classes = ['node'];
    if (row.code === focus) {
      classes.push('node-focus');
    } else if (contextSet.has(row.code)) {
      classes.push('node-context');
    }
    if (neighborSet.has(row.code)) {
      classes.push('node-neighbor');
    }
    if (spot.depth <= 1) {
      classes.push('node-top');
    }

    const labeled =
      spot.depth <= 1 || row.code === focus || contextSet.has(row.code) || neighborSet.has(row.code);
    const label = labeled
      ? `<text x="${px(spot.x + spot.r + 3)}" y="${px(spot.y + 3)}">${esc(labelFor(row, lang))}</text>`
      : '';

    glyphs.push(
      `<g class="${classes.join(' ')}" data-code="${esc(row.code)}">` +
        `<circle cx="${px(spot.x)}" cy="${px(spot.y)}" r="${px(spot.r)}"/>` +
        label +
        '</g>',
    );
  }

  return (
    `<svg class="tree-map" viewBox="0 0 ${viewport.width} ${viewport.height}"` +
    ' xmlns="http://www.w3.org/2000/svg" role="img">' +
    edges.join('') +
    glyphs.join('') +
    '</svg>'
  );
}
