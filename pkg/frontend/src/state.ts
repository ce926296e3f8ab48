// Pure state transitions for the chat view. Rendering reads the state;
// the controller in app.ts applies these on API events.

import type { ChatMessage, ChatResponse, ChatViewState } from './types';

export function canSend(state: ChatViewState, text: string): boolean {
  return !state.pending && text.trim().length > 0;
}

// Optimistic user bubble; locks the composer until the reply lands.
export function startSend(state: ChatViewState, text: string): ChatViewState {
  const message: ChatMessage = { sender: 'user', text, contexts: [] };
  return {
    ...state,
    messages: [...state.messages, message],
    pending: true,
    errorBanner: null,
    retryText: null,
  };
}

export function completeSend(state: ChatViewState, resp: ChatResponse): ChatViewState {
  const reply: ChatMessage = {
    sender: 'assistant',
    text: resp.reply,
    route: resp.route,
    // render exactly what the API returned; refusals come back with []
    contexts: resp.route === 'refused' ? [] : resp.contexts,
  };
  return {
    ...state,
    sessionId: resp.session_id,
    messages: [...state.messages, reply],
    pending: false,
    errorBanner: resp.error ? `服务降级 (degraded): ${resp.error}` : null,
  };
}

// Network failure: keep the user bubble but mark it failed, surface a retry
// affordance, and hand the unsent text back to the composer.
export function failSend(state: ChatViewState, text: string, reason: string): ChatViewState {
  const messages = [...state.messages];
  const last = messages[messages.length - 1];
  if (last && last.sender === 'user' && last.text === text) {
    messages[messages.length - 1] = { ...last, failed: true };
  }
  return {
    ...state,
    messages,
    pending: false,
    errorBanner: `发送失败 (send failed): ${reason}`,
    retryText: text,
  };
}

export function newConversation(): ChatViewState {
  return { sessionId: null, messages: [], pending: false, errorBanner: null, retryText: null };
}
