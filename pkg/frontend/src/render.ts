// DOM rendering. Pure functions from state to elements; no fetches here.

import type { ChatMessage, ChatViewState, HealthResponse } from './types';

export function renderMessage(message: ChatMessage): HTMLElement {
  const bubble = document.createElement('div');
  bubble.classList.add('message', message.sender);
  if (message.route === 'refused') bubble.classList.add('refused');
  if (message.failed) bubble.classList.add('failed');

  const text = document.createElement('p');
  text.className = 'text';
  text.textContent = message.text;
  bubble.appendChild(text);

  if (message.sender === 'assistant' && message.route) {
    const badge = document.createElement('span');
    badge.className = 'route-badge';
    badge.dataset.route = message.route;
    badge.textContent = message.route; // one-to-one with the API field
    bubble.appendChild(badge);
  }

  if (message.route !== 'refused' && message.contexts.length > 0) {
    const citations = document.createElement('div');
    citations.className = 'citations';
    for (const ctx of message.contexts) {
      const chip = document.createElement('details');
      chip.className = 'citation-chip';
      const summary = document.createElement('summary');
      summary.textContent = ctx.title || ctx.id;
      chip.appendChild(summary);
      const detail = document.createElement('p');
      detail.className = 'citation-detail';
      detail.textContent = `文档 (document): ${ctx.id}`;
      chip.appendChild(detail);
      citations.appendChild(chip);
    }
    bubble.appendChild(citations);
  }

  if (message.failed) {
    const retry = document.createElement('button');
    retry.className = 'retry';
    retry.type = 'button';
    retry.textContent = '重试 (retry)';
    bubble.appendChild(retry);
  }

  return bubble;
}

export function renderMessages(state: ChatViewState, container: HTMLElement): void {
  container.replaceChildren(...state.messages.map(renderMessage));
  if (state.pending) {
    const pending = document.createElement('div');
    pending.className = 'message assistant pending';
    pending.textContent = '…';
    container.appendChild(pending);
  }
}

export function renderErrorBanner(state: ChatViewState, banner: HTMLElement): void {
  banner.textContent = state.errorBanner ?? '';
  banner.hidden = state.errorBanner === null;
}

// Health banner: hidden when everything is up, lists degraded components,
// or shows the offline state when the service is unreachable.
export function renderHealthBanner(health: HealthResponse | 'offline' | null, banner: HTMLElement): void {
  if (health === null || (health !== 'offline' && health.status === 'ready')) {
    banner.hidden = true;
    banner.textContent = '';
    banner.className = 'health-banner';
    return;
  }
  banner.hidden = false;
  if (health === 'offline') {
    banner.className = 'health-banner offline';
    banner.textContent = '服务不可用 (service offline)';
    return;
  }
  const down = Object.entries(health.components)
    .filter(([, up]) => !up)
    .map(([name]) => name);
  banner.className = 'health-banner degraded';
  banner.textContent = `部分组件降级 (degraded): ${down.join(', ')}`;
}
