// Controller: wires the composer, message list, and banners to the API.
// One in-flight request at a time; the composer is locked while pending.

import { ChatApi } from './api';
import { renderErrorBanner, renderHealthBanner, renderMessages } from './render';
import { canSend, completeSend, failSend, newConversation, startSend } from './state';
import { loadSessionId, saveSessionId, type KeyValueStore } from './storage';
import { initialState, type ChatViewState } from './types';

export interface AppElements {
  messages: HTMLElement;
  input: HTMLInputElement | HTMLTextAreaElement;
  sendButton: HTMLButtonElement;
  newButton: HTMLButtonElement;
  errorBanner: HTMLElement;
  healthBanner: HTMLElement;
}

export class ChatApp {
  state: ChatViewState;

  constructor(
    private readonly api: ChatApi,
    private readonly elements: AppElements,
    private readonly storage: KeyValueStore,
  ) {
    this.state = initialState(loadSessionId(storage));
    elements.sendButton.addEventListener('click', () => void this.send());
    elements.input.addEventListener('keydown', (event) => {
      if ((event as KeyboardEvent).key === 'Enter' && !(event as KeyboardEvent).shiftKey) {
        event.preventDefault();
        void this.send();
      }
    });
    elements.input.addEventListener('input', () => this.syncComposer());
    elements.newButton.addEventListener('click', () => this.reset());
    elements.messages.addEventListener('click', (event) => {
      const target = event.target as HTMLElement;
      if (target.classList.contains('retry') && this.state.retryText !== null) {
        this.elements.input.value = this.state.retryText;
        void this.send();
      }
    });
    this.render();
  }

  async send(): Promise<void> {
    const text = this.elements.input.value;
    if (!canSend(this.state, text)) return;
    this.state = startSend(this.state, text.trim());
    this.elements.input.value = '';
    this.render();
    try {
      const resp = await this.api.chat(text.trim(), this.state.sessionId);
      this.state = completeSend(this.state, resp);
      saveSessionId(this.storage, resp.session_id);
    } catch (err) {
      this.state = failSend(this.state, text.trim(), err instanceof Error ? err.message : String(err));
      this.elements.input.value = this.state.retryText ?? '';
    }
    this.render();
  }

  reset(): void {
    this.state = newConversation();
    saveSessionId(this.storage, null);
    this.elements.input.value = '';
    this.render();
  }

  async refreshHealth(): Promise<void> {
    try {
      const health = await this.api.health();
      renderHealthBanner(health, this.elements.healthBanner);
    } catch {
      renderHealthBanner('offline', this.elements.healthBanner);
    }
  }

  private syncComposer(): void {
    this.elements.sendButton.disabled =
      this.state.pending || this.elements.input.value.trim().length === 0;
  }

  private render(): void {
    renderMessages(this.state, this.elements.messages);
    renderErrorBanner(this.state, this.elements.errorBanner);
    this.elements.input.disabled = this.state.pending;
    this.syncComposer();
    this.elements.messages.scrollTop = this.elements.messages.scrollHeight;
  }
}
