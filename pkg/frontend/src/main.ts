/** Browser entry point: wires the service client, view state, and renderers. */

import { ApiClient, ApiRequestError } from './api.js';
import { DEFAULT_SERVICE_BASE } from './config.js';
import { layoutTree } from './layout.js';
import type { Viewport } from './layout.js';
import { renderMap } from './map.js';
import {
  renderArticlePanel,
  renderErrorBanner,
  renderNodePanel,
  renderNotFound,
  renderSearchResults,
} from './panel.js';
import {
  initialForm,
  renderProposalForm,
  submitProposalForm,
  withInput,
} from './proposalForm.js';
import type { FormState } from './proposalForm.js';
import { ViewState } from './state.js';
import type { NodeDetail, SearchPayload, TreePayload } from './types.js';

function must(id: string): HTMLElement {
  const el = document.getElementById(id);
  if (el === null) {
    throw new Error(`missing #${id} in the page shell`);
  }
  return el;
}

const mapHost = must('map');
const panelHost = must('panel');
const bannerHost = must('banner');
const langToggle = must('lang-toggle') as HTMLButtonElement;
const searchForm = must('search-form') as HTMLFormElement;
const searchInput = must('search-input') as HTMLInputElement;

const serviceBase =
  new URLSearchParams(window.location.search).get('api') ?? DEFAULT_SERVICE_BASE;
const api = new ApiClient(serviceBase);

let tree: TreePayload | null = null;
let state: ViewState | null = null;
let focusDetail: NodeDetail | null = null;
let internalHits: SearchPayload | null = null;
let form: FormState | null = null;

function viewport(): Viewport {
  return {
    width: mapHost.clientWidth > 0 ? mapHost.clientWidth : 900,
    height: mapHost.clientHeight > 0 ? mapHost.clientHeight : 640,
  };
}

function drawMap(): void {
  if (tree === null || state === null) {
    return;
  }
  const vp = viewport();
  const scene = layoutTree(tree, state.focus, vp);
  mapHost.innerHTML = renderMap({
    tree,
    scene,
    focus: state.focus,
    lang: state.lang,
    viewport: vp,
    neighbors: focusDetail?.neighbors.map((n) => n.code) ?? [],
  });
}

function drawForm(): void {
  const slot = document.getElementById('proposal-form');
  if (slot !== null && form !== null) {
    slot.innerHTML = renderProposalForm(form);
  }
}

async function focusNode(code: string): Promise<void> {
  if (tree === null || state === null) {
    return;
  }
  const ticket = state.setFocus(code);
  if (ticket === null) {
    panelHost.innerHTML = renderNotFound(code);
    return;
  }
  focusDetail = null;
  internalHits = null;
  form = initialForm(code);
  drawMap();
  try {
    const detail = await api.getNode(code);
    if (!state.isCurrent(ticket)) {
      return;
    }
    focusDetail = detail;
    const internal = await api
      .search(detail.label_en, 'en')
      .catch(() => null);
    if (!state.isCurrent(ticket)) {
      return;
    }
    internalHits = internal;
    panelHost.innerHTML = renderNodePanel(detail, state.lang, internal);
    drawForm();
    drawMap();
  } catch (err) {
    if (state.isCurrent(ticket)) {
      panelHost.innerHTML =
        err instanceof ApiRequestError && err.status === 404
          ? renderNotFound(code)
          : renderErrorBanner('could not load the node, the service may be down');
    }
  }
}

async function openArticle(key: string): Promise<void> {
  if (state === null) {
    return;
  }
  const back =
    `<p><a href="#" class="code-link" data-code="${state.focus}">back to ${state.focus}</a></p>`;
  try {
    const article = await api.getArticle(key);
    panelHost.innerHTML = back + renderArticlePanel(article);
  } catch (err) {
    panelHost.innerHTML =
      err instanceof ApiRequestError && err.status === 404
        ? back + renderNotFound(key)
        : renderErrorBanner('could not load the record');
  }
}

async function runSearch(query: string): Promise<void> {
  if (state === null || query.trim() === '') {
    return;
  }
  try {
    const payload = await api.search(query.trim(), state.lang);
    panelHost.innerHTML = renderSearchResults(payload, state.lang);
    if (form !== null) {
      drawForm();
    }
  } catch {
    panelHost.innerHTML = renderErrorBanner('search failed, the service may be down');
  }
}

async function submitForm(): Promise<void> {
  if (form === null) {
    return;
  }
  form = { ...form, phase: 'submitting' };
  drawForm();
  form = await submitProposalForm(form, api);
  drawForm();
}

async function loadTree(): Promise<void> {
  bannerHost.innerHTML = '';
  try {
    tree = await api.getTree();
    state = new ViewState(tree);
    await focusNode(tree.root);
  } catch {
    bannerHost.innerHTML = renderErrorBanner('could not reach the taxonomy service');
  }
}

document.addEventListener('click', (event) => {
  const target = event.target as HTMLElement | null;
  if (target === null) {
    return;
  }
  const coded = target.closest<HTMLElement>('[data-code]');
  if (coded !== null && coded.dataset['code'] !== undefined) {
    event.preventDefault();
    void focusNode(coded.dataset['code']);
    return;
  }
  const keyed = target.closest<HTMLElement>('a[data-key]');
  if (keyed !== null && keyed.dataset['key'] !== undefined) {
    event.preventDefault();
    void openArticle(keyed.dataset['key']);
    return;
  }
  const action = target.closest<HTMLElement>('[data-action]')?.dataset['action'];
  if (action === 'retry-load') {
    event.preventDefault();
    void loadTree();
  } else if (action === 'retry-proposal') {
    event.preventDefault();
    void submitForm();
  } else if (action === 'focus-proposal') {
    document.getElementById('proposal-form')?.scrollIntoView();
  }
});

panelHost.addEventListener('input', (event) => {
  const el = event.target as HTMLInputElement | HTMLSelectElement | null;
  if (el === null || form === null) {
    return;
  }
  if (el.name === 'text' || el.name === 'member') {
    form = withInput(form, { [el.name]: el.value });
  } else if (el.name === 'kind' && (el.value === 'correction' || el.value === 'specification')) {
    form = withInput(form, { kind: el.value });
  }
});

panelHost.addEventListener('submit', (event) => {
  const el = event.target as HTMLElement | null;
  if (el !== null && el.classList.contains('proposal')) {
    event.preventDefault();
    void submitForm();
  }
});

langToggle.addEventListener('click', () => {
  if (state === null || tree === null) {
    return;
  }
  const lang = state.toggleLanguage();
  langToggle.textContent = lang === 'en' ? 'voir en francais' : 'switch to English';
  // relabel both views from what is already loaded; no fetch, no geometry change
  drawMap();
  if (focusDetail !== null) {
    panelHost.innerHTML = renderNodePanel(focusDetail, state.lang, internalHits);
    drawForm();
  }
});

searchForm.addEventListener('submit', (event) => {
  event.preventDefault();
  void runSearch(searchInput.value);
});

window.addEventListener('resize', drawMap);

void loadTree();
