/**
 * Evolution proposal form. State is a plain value and every transition
 * returns a fresh one, so the submit flow is testable without a DOM: the
 * only effect lives in the ApiClient handed to submitProposalForm.
 */

import { ApiRequestError } from './api.js';
import type { ApiClient } from './api.js';
import { esc } from './html.js';
import type { ProposalKind } from './types.js';

export type FormPhase = 'idle' | 'submitting' | 'accepted' | 'rejected' | 'offline';

export interface FormState {
  node: string;
  text: string;
  kind: ProposalKind;
  member: string;
  phase: FormPhase;
  note: string;
  lastId: string | null;
}

export function initialForm(node: string): FormState {
  return { node, text: '', kind: 'correction', member: '', phase: 'idle', note: '', lastId: null };
}

export function withInput(
  state: FormState,
  patch: Partial<Pick<FormState, 'text' | 'kind' | 'member'>>,
): FormState {
  return { ...state, ...patch };
}

/** Reason the form cannot be sent yet, or null when it can. */
export function validate(state: FormState): string | null {
  if (state.text.trim() === '') {
    return 'enter the proposed text first';
  }
  if (state.member.trim() === '') {
    return 'sign with a member name first';
  }
  return null;
}

/**
 * Submit the form. Invalid input never reaches the network. A server
 * rejection or an unreachable service both keep the typed text so nothing
 * is lost; only a recorded proposal clears the field.
 */
export async function submitProposalForm(state: FormState, api: ApiClient): Promise<FormState> {
  const problem = validate(state);
  if (problem !== null) {
    return { ...state, phase: 'idle', note: problem };
  }
  try {
    const receipt = await api.submitProposal({
      node: state.node,
      text: state.text.trim(),
      kind: state.kind,
      member: state.member.trim(),
    });
    return {
      ...state,
      phase: 'accepted',
      note: `recorded as ${receipt.id} (${receipt.status}), awaiting votes`,
      lastId: receipt.id,
      text: '',
    };
  } catch (err) {
    if (err instanceof ApiRequestError) {
      return { ...state, phase: 'rejected', note: err.message };
    }
    return {
      ...state,
      phase: 'offline',
      note: 'service unreachable, your text is kept, retry once it is back',
    };
  }
}

export function renderProposalForm(state: FormState): string {
  const kindOption = (kind: ProposalKind): string =>
    `<option value="${kind}"${state.kind === kind ? ' selected' : ''}>${kind}</option>`;
  const note =
    state.note === ''
      ? ''
      : `<p class="form-note form-${state.phase}">${esc(state.note)}</p>`;
  const retry =
    state.phase === 'offline'
      ? '<button type="button" data-action="retry-proposal">retry</button>'
      : '';
  return (
    `<form class="proposal" data-node="${esc(state.node)}">` +
    `<h3>propose for ${esc(state.node)}</h3>` +
    `<input name="text" value="${esc(state.text)}" placeholder="proposed label or correction" autocomplete="off"/>` +
    `<select name="kind">${kindOption('correction')}${kindOption('specification')}</select>` +
    `<input name="member" value="${esc(state.member)}" placeholder="your member name" autocomplete="off"/>` +
    `<button type="submit"${state.phase === 'submitting' ? ' disabled' : ''}>send</button>` +
    retry +
    note +
    '</form>'
  );
}
