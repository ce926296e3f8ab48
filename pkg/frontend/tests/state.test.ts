import { describe, expect, it } from 'vitest';

import { canSend, completeSend, failSend, newConversation, startSend } from '../src/state';
import { initialState, type ChatResponse } from '../src/types';

const educationResponse: ChatResponse = {
  session_id: 's-1',
  reply: '根据资料……',
  route: 'education',
  contexts: [
    { id: 'doc-1', title: '勾股定理' },
    { id: 'doc-2', title: '一元二次方程' },
    { id: 'doc-3', title: '函数图象' },
  ],
  safety: { safe: true },
};

describe('canSend', () => {
  it('rejects blank input', () => {
    expect(canSend(initialState(), '   ')).toBe(false);
  });

  it('rejects while a request is pending', () => {
    const state = startSend(initialState(), 'hello');
    expect(canSend(state, 'next')).toBe(false);
  });

  it('accepts non-empty input when idle', () => {
    expect(canSend(initialState(), '你好')).toBe(true);
  });
});

describe('startSend', () => {
  it('adds an optimistic user bubble and locks pending', () => {
    const state = startSend(initialState(), '什么是导数');
    expect(state.pending).toBe(true);
    expect(state.messages).toHaveLength(1);
    expect(state.messages[0]).toMatchObject({ sender: 'user', text: '什么是导数' });
  });
});

describe('completeSend', () => {
  it('appends the assistant reply with route and contexts verbatim', () => {
    const state = completeSend(startSend(initialState(), 'q'), educationResponse);
    expect(state.pending).toBe(false);
    expect(state.sessionId).toBe('s-1');
    const reply = state.messages[1];
    expect(reply.route).toBe('education');
    expect(reply.contexts).toEqual(educationResponse.contexts);
  });

  it('strips contexts from refused replies', () => {
    const refused: ChatResponse = {
      ...educationResponse,
      route: 'refused',
      safety: { safe: false },
    };
    const state = completeSend(startSend(initialState(), 'q'), refused);
    expect(state.messages[1].contexts).toEqual([]);
  });

  it('surfaces a degraded banner when the API flags an error', () => {
    const degraded: ChatResponse = { ...educationResponse, error: 'backend_unavailable' };
    const state = completeSend(startSend(initialState(), 'q'), degraded);
    expect(state.errorBanner).toContain('backend_unavailable');
  });
});

describe('failSend', () => {
  it('marks the optimistic bubble failed and preserves the text for retry', () => {
    const state = failSend(startSend(initialState(), '我的问题'), '我的问题', 'network down');
    expect(state.pending).toBe(false);
    expect(state.messages[0].failed).toBe(true);
    expect(state.retryText).toBe('我的问题');
    expect(state.errorBanner).toContain('network down');
  });
});

describe('newConversation', () => {
  it('starts from a clean slate', () => {
    const fresh = newConversation();
    expect(fresh.sessionId).toBeNull();
    expect(fresh.messages).toHaveLength(0);
    expect(fresh.errorBanner).toBeNull();
    expect(fresh.pending).toBe(false);
  });
});
