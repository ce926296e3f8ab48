// Component tests: the full app wired to a stubbed service.

import { beforeEach, describe, expect, it } from 'vitest';

import { ChatApi, type FetchLike } from '../src/api';
import { ChatApp, type AppElements } from '../src/app';
import { memoryStore, type KeyValueStore } from '../src/storage';
import type { ChatResponse } from '../src/types';

function jsonResponse(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { 'content-type': 'application/json' },
  });
}

function elements(): AppElements {
  document.body.innerHTML = `
    <div id="health-banner" hidden></div>
    <div id="error-banner" hidden></div>
    <main id="messages"></main>
    <textarea id="composer-input"></textarea>
    <button id="send-button"></button>
    <button id="new-conversation"></button>
  `;
  return {
    messages: document.getElementById('messages') as HTMLElement,
    input: document.getElementById('composer-input') as HTMLTextAreaElement,
    sendButton: document.getElementById('send-button') as HTMLButtonElement,
    newButton: document.getElementById('new-conversation') as HTMLButtonElement,
    errorBanner: document.getElementById('error-banner') as HTMLElement,
    healthBanner: document.getElementById('health-banner') as HTMLElement,
  };
}

const canned: ChatResponse = {
  session_id: 'sess-42',
  reply: '根据 [d1] [d2] [d3] 的资料……',
  route: 'education',
  contexts: [
    { id: 'd1', title: '勾股定理' },
    { id: 'd2', title: '一元二次方程' },
    { id: 'd3', title: '函数图象' },
  ],
  safety: { safe: true },
};

let store: KeyValueStore;

beforeEach(() => {
  store = memoryStore();
});

function appWith(fetchImpl: FetchLike, els = elements()): { app: ChatApp; els: AppElements } {
  return { app: new ChatApp(new ChatApi('', fetchImpl), els, store), els };
}

describe('sending a message', () => {
  it('shows the user bubble, then the reply with badge and three chips', async () => {
    const requests: Array<{ url: string; body: unknown }> = [];
    const { app, els } = appWith(async (url, init) => {
      requests.push({ url, body: JSON.parse(String(init?.body)) });
      return jsonResponse(canned);
    });

    els.input.value = '勾股定理 怎么 证明';
    await app.send();

    expect(requests[0].url).toBe('/v1/chat');
    expect(requests[0].body).toEqual({ message: '勾股定理 怎么 证明' });
    const bubbles = els.messages.querySelectorAll('.message');
    expect(bubbles).toHaveLength(2);
    expect(bubbles[1].querySelector('.route-badge')?.textContent).toBe('education');
    expect(bubbles[1].querySelectorAll('.citation-chip')).toHaveLength(3);
    expect(store.getItem('eduroute.session_id')).toBe('sess-42');
  });

  it('reuses the stored session id on the next message', async () => {
    const bodies: Array<Record<string, unknown>> = [];
    const { app, els } = appWith(async (_url, init) => {
      bodies.push(JSON.parse(String(init?.body)));
      return jsonResponse(canned);
    });
    els.input.value = '第一条';
    await app.send();
    els.input.value = '第二条';
    await app.send();
    expect(bodies[0].session_id).toBeUndefined();
    expect(bodies[1].session_id).toBe('sess-42');
  });

  it('locks the composer while the request is in flight', async () => {
    let release!: (value: Response) => void;
    const gate = new Promise<Response>((resolve) => (release = resolve));
    const { app, els } = appWith(() => gate);

    els.input.value = '问题';
    const inflight = app.send();
    expect(els.input.disabled).toBe(true);
    expect(els.sendButton.disabled).toBe(true);
    expect(els.messages.querySelector('.pending')).not.toBeNull();

    release(jsonResponse(canned));
    await inflight;
    expect(els.input.disabled).toBe(false);
  });

  it('ignores blank input', async () => {
    const { app, els } = appWith(async () => jsonResponse(canned));
    els.input.value = '   ';
    await app.send();
    expect(els.messages.querySelectorAll('.message')).toHaveLength(0);
  });
});

describe('refusals', () => {
  it('renders the warning bubble with no chips', async () => {
    const refused: ChatResponse = {
      session_id: 'sess-43',
      reply: '很抱歉，我无法回答这个问题。',
      route: 'refused',
      contexts: [],
      safety: { safe: false },
    };
    const { app, els } = appWith(async () => jsonResponse(refused));
    els.input.value = '不安全 的 话';
    await app.send();
    const reply = els.messages.querySelectorAll('.message')[1];
    expect(reply.classList.contains('refused')).toBe(true);
    expect(reply.querySelectorAll('.citation-chip')).toHaveLength(0);
    expect(reply.querySelector('.route-badge')?.textContent).toBe('refused');
  });
});

describe('network failure', () => {
  it('keeps the input, shows the banner, and retries on click', async () => {
    let attempts = 0;
    const { app, els } = appWith(async () => {
      attempts += 1;
      if (attempts === 1) throw new Error('connection refused');
      return jsonResponse(canned);
    });

    els.input.value = '我的 问题';
    await app.send();
    expect(els.errorBanner.hidden).toBe(false);
    expect(els.errorBanner.textContent).toContain('connection refused');
    expect(els.input.value).toBe('我的 问题');
    expect(els.messages.querySelector('.message.failed')).not.toBeNull();

    (els.messages.querySelector('.retry') as HTMLButtonElement).click();
    await Promise.resolve();
    await new Promise((r) => setTimeout(r, 0));
    expect(attempts).toBe(2);
    expect(els.errorBanner.hidden).toBe(true);
    expect(els.messages.querySelectorAll('.citation-chip')).toHaveLength(3);
  });
});

describe('new conversation', () => {
  it('clears the thread and drops the stored session id', async () => {
    const { app, els } = appWith(async () => jsonResponse(canned));
    els.input.value = '你好';
    await app.send();
    expect(store.getItem('eduroute.session_id')).toBe('sess-42');

    app.reset();
    expect(els.messages.querySelectorAll('.message')).toHaveLength(0);
    expect(store.getItem('eduroute.session_id')).toBeNull();
  });
});

describe('health banner', () => {
  it('reflects degraded and offline states', async () => {
    const { app, els } = appWith(async (url) => {
      if (url.endsWith('/v1/health')) {
        return jsonResponse({ status: 'degraded', components: { index: false, backend: true } });
      }
      return jsonResponse(canned);
    });
    await app.refreshHealth();
    expect(els.healthBanner.hidden).toBe(false);
    expect(els.healthBanner.textContent).toContain('index');

    const offline = appWith(async () => {
      throw new Error('ECONNREFUSED');
    });
    await offline.app.refreshHealth();
    expect(offline.els.healthBanner.classList.contains('offline')).toBe(true);
  });
});
