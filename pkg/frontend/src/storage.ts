// Session id continuity across page loads. The storage backend is
// injectable; the browser uses localStorage, tests use a plain map.

export interface KeyValueStore {
  getItem(key: string): string | null;
  setItem(key: string, value: string): void;
  removeItem(key: string): void;
}

const SESSION_KEY = 'eduroute.session_id';

export function loadSessionId(store: KeyValueStore): string | null {
  return store.getItem(SESSION_KEY);
}

export function saveSessionId(store: KeyValueStore, sessionId: string | null): void {
  if (sessionId === null) {
    store.removeItem(SESSION_KEY);
  } else {
    store.setItem(SESSION_KEY, sessionId);
  }
}

export function memoryStore(): KeyValueStore {
  const map = new Map<string, string>();
  return {
    getItem: (k) => map.get(k) ?? null,
    setItem: (k, v) => void map.set(k, v),
    removeItem: (k) => void map.delete(k),
  };
}
