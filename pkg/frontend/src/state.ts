/** Client-side view state: current focus, display language, staleness guard. */

import type { Language, TreePayload } from './types.js';

interface Labeled {
  label_en: string;
  label_fr: string;
}

/** Label in the active language, falling back to English when untranslated. */
export function labelFor(node: Labeled, lang: Language): string {
  if (lang === 'fr' && node.label_fr !== '') {
    return node.label_fr;
  }
  return node.label_en;
}

export function isUntranslated(node: Labeled): boolean {
  return node.label_fr === '';
}

export class ViewState {
  private readonly known: Set<string>;
  private focused: string;
  private language: Language = 'en';
  // monotone counter; responses carrying an older ticket are discarded
  private ticket = 0;

  constructor(tree: TreePayload) {
    this.known = new Set(tree.nodes.map((n) => n.code));
    this.focused = tree.root;
  }

  get focus(): string {
    return this.focused;
  }

  get lang(): Language {
    return this.language;
  }

  /**
   * Move focus to a code from the tree. Unknown codes are refused so the
   * focus invariant (it always names a live node) cannot break; callers get
   * null back and the old focus stays. A successful move returns a ticket
   * to compare against isCurrent() when its fetches resolve.
   */
  setFocus(code: string): number | null {
    if (!this.known.has(code)) {
      return null;
    }
    this.focused = code;
    this.ticket += 1;
    return this.ticket;
  }

  /** False once a later setFocus superseded the given ticket. */
  isCurrent(ticket: number): boolean {
    return ticket === this.ticket;
  }

  /** Flip display language. Relabeling only; focus and geometry are untouched. */
  toggleLanguage(): Language {
    this.language = this.language === 'en' ? 'fr' : 'en';
    return this.language;
  }
}
