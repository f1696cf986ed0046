/** Detail panel renderers. Pure string producers, no DOM access. */

import { esc } from './html.js';
import { isUntranslated, labelFor } from './state.js';
import type { ArticleDetail, Language, NodeDetail, SearchPayload } from './types.js';

function codeLink(code: string, text: string): string {
  return `<a href="#" class="code-link" data-code="${esc(code)}">${esc(text)}</a>`;
}

/**
 * Node view: bilingual labels, lexicon, hierarchy, proximity neighbors,
 * one outbound query link per configured provider, and the local matches
 * for the node's own label. Provider URLs come from the service already
 * assembled; they are emitted verbatim, never rebuilt on this side.
 */
export function renderNodePanel(
  detail: NodeDetail,
  lang: Language,
  internal: SearchPayload | null,
): string {
  const parts: string[] = [];
  parts.push(`<h2><span class="code">${esc(detail.code)}</span> ${esc(labelFor(detail, lang))}</h2>`);

  if (isUntranslated(detail)) {
    parts.push(
      '<p class="labels"><span class="lang-tag">fr</span> ' +
        '<a href="#proposal-form" class="untranslated" data-action="focus-proposal">' +
        'untranslated, suggest a label</a></p>',
    );
  } else {
    parts.push(
      `<p class="labels"><span class="lang-tag">en</span> ${esc(detail.label_en)}` +
        ` <span class="lang-tag">fr</span> ${esc(detail.label_fr)}</p>`,
    );
  }

  if (detail.keywords.length > 0) {
    const chips = detail.keywords
      .map(
        (k) =>
          `<li class="keyword keyword-${esc(k.origin)}" title="${esc(k.source)}">${esc(k.lemma)}</li>`,
      )
      .join('');
    parts.push(`<ul class="keywords">${chips}</ul>`);
  }

  const hops: string[] = [];
  if (detail.parent !== null) {
    hops.push(`<li>up: ${codeLink(detail.parent.code, labelFor(detail.parent, lang))}</li>`);
  }
  for (const child of detail.children) {
    hops.push(`<li>down: ${codeLink(child.code, labelFor(child, lang))}</li>`);
  }
  for (const n of detail.neighbors) {
    hops.push(
      `<li>near: ${codeLink(n.code, n.label_en)} ` +
        `<span class="weight" title="${esc(n.provenance)}">${n.weight}</span></li>`,
    );
  }
  if (hops.length > 0) {
    parts.push(`<ul class="hops">${hops.join('')}</ul>`);
  }

  if (detail.metaqueries.length > 0) {
    const links = detail.metaqueries
      .map(
        (mq) =>
          `<li><a class="provider-link" data-provider="${esc(mq.provider)}" ` +
          `href="${esc(mq.url)}" target="_blank" rel="noopener">${esc(mq.provider)}</a></li>`,
      )
      .join('');
    parts.push(`<ul class="providers">${links}</ul>`);
  } else {
    parts.push('<p class="providers-empty">no queryable terms for outside search</p>');
  }

  parts.push(renderArticleList(internal));
  parts.push('<div id="proposal-form"></div>');
  return parts.join('\n');
}

function renderArticleList(internal: SearchPayload | null): string {
  if (internal === null || internal.articles.length === 0) {
    return '<p class="articles-empty">no matching records in the local corpus</p>';
  }
  const rows = internal.articles
    .map((a) => {
      const year = a.year === null ? '' : ` (${a.year})`;
      const venue = a.venue === '' ? '' : ` <span class="venue">${esc(a.venue)}</span>`;
      return (
        `<li class="article" data-key="${esc(a.key)}">` +
        `<a href="#" data-key="${esc(a.key)}">${esc(a.title)}</a>${year}${venue}</li>`
      );
    })
    .join('');
  return `<ul class="articles">${rows}</ul>`;
}

/** Record view, with the locator when the record carries one and the scholarly search fallback when it does not. */
export function renderArticlePanel(article: ArticleDetail): string {
  const parts: string[] = [];
  parts.push(`<h2>${esc(article.title)}</h2>`);
  const year = article.year === null ? '' : `, ${article.year}`;
  parts.push(`<p class="byline">${esc(article.authors.join(', '))}${year}</p>`);
  if (article.venue !== '') {
    parts.push(`<p class="venue">${esc(article.venue)}</p>`);
  }

  if (article.uri !== null) {
    parts.push(
      `<p><a class="locator" href="${esc(article.uri)}" target="_blank" rel="noopener">open document</a></p>`,
    );
  } else if (article.scholar_url !== null) {
    parts.push(
      `<p><a class="scholar-fallback" href="${esc(article.scholar_url)}" target="_blank" rel="noopener">` +
        'no stored locator, search Google Scholar</a></p>',
    );
  }

  if (article.assigned.length > 0) {
    const codes = article.assigned.map((c) => codeLink(c, c)).join(' ');
    parts.push(`<p class="assigned">filed under ${codes}</p>`);
  } else if (article.orphan_host !== null) {
    parts.push(`<p class="assigned">waiting in the bin of ${codeLink(article.orphan_host, article.orphan_host)}</p>`);
  }
  return parts.join('\n');
}

export function renderSearchResults(payload: SearchPayload, lang: Language): string {
  const parts: string[] = [];
  parts.push(`<h2>results for "${esc(payload.query)}"</h2>`);
  if (payload.miss !== null) {
    parts.push(`<p class="miss">${esc(payload.miss.message)}</p>`);
    parts.push(
      '<p><a href="#proposal-form" class="untranslated" data-action="focus-proposal">' +
        'suggest a label that would cover it</a></p>',
    );
  }
  if (payload.nodes.length > 0) {
    const rows = payload.nodes
      .map((n) => `<li>${codeLink(n.code, labelFor(n, lang))}</li>`)
      .join('');
    parts.push(`<ul class="node-hits">${rows}</ul>`);
  }
  parts.push(renderArticleList(payload));
  return parts.join('\n');
}

export function renderNotFound(what: string): string {
  return `<p class="not-found">${esc(what)} is not in the collection</p>`;
}

export function renderErrorBanner(message: string): string {
  return (
    `<div class="banner banner-error"><span>${esc(message)}</span> ` +
    '<button type="button" data-action="retry-load">retry</button></div>'
  );
}
