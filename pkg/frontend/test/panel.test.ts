import { describe, expect, it } from 'vitest';

import {
  renderArticlePanel,
  renderErrorBanner,
  renderNodePanel,
  renderNotFound,
  renderSearchResults,
} from '../src/panel.js';
import type { ArticleDetail, NodeDetail, SearchPayload } from '../src/types.js';
import { fixture } from './helpers.js';
import type { MetaqueryFixture } from './helpers.js';

const nodeH3 = fixture<NodeDetail>('node_h3.json');
const searchH3 = fixture<SearchPayload>('search_h3.json');
const articleT03 = fixture<ArticleDetail>('article_t03.json');
const metaqueries = fixture<MetaqueryFixture>('metaqueries.json');

function providerLinks(html: string): Array<[string, string]> {
  const pattern = /<a class="provider-link" data-provider="([^"]*)" href="([^"]*)"/g;
  return [...html.matchAll(pattern)].map((m) => [m[1]!, m[2]!]);
}

describe('renderNodePanel', () => {
  it('emits one outbound link per provider, byte-identical to the service urls', () => {
    const html = renderNodePanel(nodeH3, 'en', searchH3);
    const links = providerLinks(html);
    const expected = metaqueries['H.3']!.urls;

    expect(links.map(([provider]) => provider)).toEqual(Object.keys(expected).sort());
    for (const [provider, href] of links) {
      // guard: markup escaping must not have touched the url
      expect(href).not.toMatch(/[&<>']/);
      expect(href).toBe(expected[provider]);
      expect(href).toBe(nodeH3.metaqueries.find((m) => m.provider === provider)!.url);
    }
  });

  it('opens provider links away from the app', () => {
    const html = renderNodePanel(nodeH3, 'en', searchH3);
    const anchors = html.match(/<a class="provider-link"[^>]*>/g) ?? [];
    expect(anchors.length).toBe(nodeH3.metaqueries.length);
    for (const a of anchors) {
      expect(a).toContain('target="_blank"');
      expect(a).toContain('rel="noopener"');
    }
  });

  it('lists the local corpus matches for the node label', () => {
    const html = renderNodePanel(nodeH3, 'en', searchH3);
    for (const hit of searchH3.articles) {
      expect(html).toContain(`data-key="${hit.key}"`);
      expect(html).toContain(hit.title);
    }
  });

  it('shows both language labels when the translation exists', () => {
    const translated: NodeDetail = { ...nodeH3, label_fr: "recherche d'information" };
    const html = renderNodePanel(translated, 'fr', null);
    expect(html).toContain('recherche d&#39;information');
    expect(html).toContain(nodeH3.label_en);
    expect(html).not.toContain('class="untranslated"');
  });

  it('offers the proposal form when the active node lacks a translation', () => {
    const untranslated: NodeDetail = { ...nodeH3, label_fr: '' };
    const html = renderNodePanel(untranslated, 'en', null);
    expect(html).toContain('class="untranslated"');
    expect(html).toContain('data-action="focus-proposal"');
    expect(html).toContain('href="#proposal-form"');
  });

  it('labels hierarchy hops in the active language and falls back for bare codes', () => {
    const html = renderNodePanel(nodeH3, 'fr', searchH3);
    // H.3.1 has no French label, so its English one must appear
    expect(html).toContain('miscellaneous');
    expect(html).toContain(`data-code="${nodeH3.neighbors[0]!.code}"`);
  });

  it('always leaves a mount point for the proposal form', () => {
    expect(renderNodePanel(nodeH3, 'en', null)).toContain('id="proposal-form"');
  });
});

describe('renderArticlePanel', () => {
  it('falls back to the scholarly search link when the record has no locator', () => {
    expect(articleT03.uri).toBeNull();
    const html = renderArticlePanel(articleT03);
    expect(html).toContain('class="scholar-fallback"');
    expect(html).toContain(`href="${articleT03.scholar_url}"`);
    expect(html).not.toContain('class="locator"');
  });

  it('links the stored locator when there is one and skips the fallback', () => {
    const located: ArticleDetail = {
      ...articleT03,
      uri: 'https://example.org/paper.pdf',
      scholar_url: null,
    };
    const html = renderArticlePanel(located);
    expect(html).toContain('class="locator"');
    expect(html).toContain('href="https://example.org/paper.pdf"');
    expect(html).not.toContain('scholar-fallback');
  });

  it('links every assigned code back into the map', () => {
    const html = renderArticlePanel(articleT03);
    for (const code of articleT03.assigned) {
      expect(html).toContain(`data-code="${code}"`);
    }
  });
});

describe('inline messages', () => {
  it('reports unknown things without an error page', () => {
    const html = renderNotFound('x99');
    expect(html).toContain('not in the collection');
    expect(html).toContain('x99');
  });

  it('renders the retry affordance in the failure banner', () => {
    const html = renderErrorBanner('could not reach the taxonomy service');
    expect(html).toContain('data-action="retry-load"');
    expect(html).toContain('could not reach the taxonomy service');
  });

  it('surfaces a search miss with a path to the proposal form', () => {
    const missed: SearchPayload = {
      query: 'rendu non photorealiste',
      lang: 'fr',
      nodes: [],
      articles: [],
      miss: {
        query: 'rendu non photorealiste',
        lang: 'fr',
        message: "no match for 'rendu non photorealiste' in language 'fr'",
      },
    };
    const html = renderSearchResults(missed, 'fr');
    expect(html).toContain('no match for');
    expect(html).toContain('data-action="focus-proposal"');
  });

  it('escapes untrusted text in search echoes', () => {
    const spiky: SearchPayload = {
      query: '<script>alert(1)</script>',
      lang: 'en',
      nodes: [],
      articles: [],
      miss: null,
    };
    const html = renderSearchResults(spiky, 'en');
    expect(html).not.toContain('<script>');
    expect(html).toContain('&lt;script&gt;');
  });
});
