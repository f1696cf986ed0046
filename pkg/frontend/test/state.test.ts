import { describe, expect, it } from 'vitest';

import { ViewState, isUntranslated, labelFor } from '../src/state.js';
import type { TreePayload } from '../src/types.js';
import { fixture } from './helpers.js';

const tree = fixture<TreePayload>('tree.json');

describe('ViewState', () => {
  it('starts focused on the root', () => {
    const state = new ViewState(tree);
    expect(state.focus).toBe(tree.root);
  });

  it('refuses codes that are not in the tree, keeping the focus valid', () => {
    const state = new ViewState(tree);
    expect(state.setFocus('Z.99')).toBeNull();
    expect(state.focus).toBe(tree.root);
  });

  it('moves focus and hands out a fresh ticket per move', () => {
    const state = new ViewState(tree);
    const first = state.setFocus('H.3');
    expect(first).not.toBeNull();
    expect(state.focus).toBe('H.3');
    const second = state.setFocus('A.2');
    expect(second).not.toBeNull();
    expect(second).not.toBe(first);
  });

  it('marks tickets stale once focus moved on, so late replies get dropped', () => {
    const state = new ViewState(tree);
    const slow = state.setFocus('H.3')!;
    expect(state.isCurrent(slow)).toBe(true);
    state.setFocus('G.3');
    expect(state.isCurrent(slow)).toBe(false);
  });

  it('keeps focus where it was across a language toggle', () => {
    const state = new ViewState(tree);
    state.setFocus('H.3');
    expect(state.toggleLanguage()).toBe('fr');
    expect(state.focus).toBe('H.3');
    expect(state.toggleLanguage()).toBe('en');
  });
});

describe('labels', () => {
  it('prefers the active language', () => {
    const node = { label_en: 'computer graphics', label_fr: 'infographie' };
    expect(labelFor(node, 'en')).toBe('computer graphics');
    expect(labelFor(node, 'fr')).toBe('infographie');
  });

  it('falls back to English when the translation is missing', () => {
    const node = { label_en: 'miscellaneous', label_fr: '' };
    expect(labelFor(node, 'fr')).toBe('miscellaneous');
    expect(isUntranslated(node)).toBe(true);
  });
});
